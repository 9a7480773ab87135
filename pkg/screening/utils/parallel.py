"""Order-preserving fan-out over independent engine evaluations."""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar
import logging

from screening.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> list[R]:
    """Map fn over items with at most SPECTRA_THREADS workers; results keep input order."""
    items = list(items)
    workers = min(threads or get_settings().threads, max(len(items), 1))
    if workers <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Fanning out {len(items)} evaluations over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
