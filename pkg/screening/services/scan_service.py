"""Basis-parameter plateau scans and numerical critical screening."""
import logging
from typing import Optional, Sequence

import numpy as np

from screening.config import get_settings
from screening.models.basis import BasisSpec
from screening.models.potential import CriticalScreeningResult, PotentialModel
from screening.models.results import PlateauReport, PoleResult
from screening.services.spectra_service import SpectralEngine, stable_digits
from screening.utils.exceptions import BracketingError
from screening.utils.parallel import parallel_map

logger = logging.getLogger(__name__)

# a plateau must hold at least this many digits to count as stable
_MIN_STABLE_DIGITS = 2


def tracked_pole(
    engine: SpectralEngine,
    kind: str = "bound",
    state_index: int = 0,
    seed: Optional[complex] = None,
    theta_grid: Optional[Sequence[float]] = None,
) -> Optional[PoleResult]:
    """The state a scan follows: the state_index-th bound level, or the resonance nearest to seed."""
    if kind == "bound":
        states = engine.find_bound_states()
        return states[state_index] if state_index < len(states) else None
    if kind == "resonance":
        found = engine.find_resonances(theta_grid)
        if not found:
            return None
        if seed is None:
            return found[min(state_index, len(found) - 1)]
        return min(found, key=lambda p: abs(p.energy - seed))
    raise ValueError(f"Unknown pole kind '{kind}'")


def _plateau_window(changes: np.ndarray) -> tuple[int, int, float]:
    """(start, stop, smallest change) of the run of points around the calmest step."""
    best = int(np.nanargmin(changes))
    c_min = float(changes[best])
    limit = max(10 * c_min, 1e-15)
    start, stop = best, best + 1
    while start > 0 and changes[start - 1] <= limit:
        start -= 1
    while stop < changes.size and changes[stop] <= limit:
        stop += 1
    return start, stop, c_min


def plateau_scan(
    model: PotentialModel,
    ell: int,
    lambda_grid: Sequence[float],
    n_basis_list: Sequence[int],
    kind: str = "bound",
    state_index: int = 0,
    seed: Optional[complex] = None,
    mode: Optional[str] = None,
    theta_grid: Optional[Sequence[float]] = None,
    threads: Optional[int] = None,
) -> PlateauReport:
    """Follow one pole over (N, lambda) and report the value where it stops moving."""
    if len(lambda_grid) == 0 or len(n_basis_list) == 0:
        raise ValueError("plateau scan needs nonempty lambda and N grids")
    grid = [(n, lam) for n in n_basis_list for lam in lambda_grid]

    def evaluate(point):
        n, lam = point
        engine = SpectralEngine.build(BasisSpec(ell=ell, lam=lam, n_basis=n), model, mode=mode)
        return tracked_pole(engine, kind, state_index, seed, theta_grid)

    poles = parallel_map(evaluate, grid, threads)
    energies = np.array([p.energy if p is not None else complex(np.nan, np.nan) for p in poles])
    changes = np.abs(np.diff(energies)) / np.abs(energies[1:]) if energies.size > 1 else np.empty(0)
    lambdas = tuple(lam for _, lam in grid)
    sizes = tuple(n for n, _ in grid)
    notes = [f"N={n} lambda={lam}: state not found" for (n, lam), p in zip(grid, poles) if p is None]

    if changes.size == 0 or np.all(np.isnan(changes)):
        found = [p for p in poles if p is not None]
        best = found[0] if found else None
        index = next((i for i, p in enumerate(poles) if p is not None), None)
        notes.append("fewer than two successive evaluations; no plateau")
        logger.warning(f"Plateau scan for {model.name}: no plateau found")
        return PlateauReport(lambdas, sizes, energies, changes, (0, 0), best, False, notes, index)

    start, stop, c_min = _plateau_window(changes)
    digits = stable_digits(c_min)
    chosen = start + int(np.nanargmin(changes[start:stop])) + 1
    pole = poles[chosen].with_digits(digits)
    stable = digits >= _MIN_STABLE_DIGITS
    if not stable:
        notes.append(f"best relative change {c_min:.3e} leaves fewer than {_MIN_STABLE_DIGITS} stable digits")
    logger.info(
        f"Plateau for {model.name} ({kind} #{state_index}): points {start}..{stop}, "
        f"E={pole.energy:.12g}, {digits} stable digits"
    )
    return PlateauReport(lambdas, sizes, energies, changes, (start, stop), pole, stable, notes, chosen)


def critical_screening_numeric(
    model: PotentialModel,
    spec: BasisSpec,
    state_index: int,
    mu_lo: float,
    mu_hi: float,
    tolerance: Optional[float] = None,
    mode: Optional[str] = None,
) -> CriticalScreeningResult:
    """Bisect on mu for the value where the state_index-th level of this ell leaves the spectrum."""
    tolerance = tolerance or get_settings().bisection_tol
    if not 0 < mu_lo < mu_hi:
        raise ValueError("need 0 < mu_lo < mu_hi")
    trace: list[tuple[float, bool, Optional[float]]] = []

    def exists(mu: float) -> bool:
        engine = SpectralEngine.build(spec, model.with_parameters(mu=mu), mode=mode)
        states = engine.find_bound_states()
        present = state_index < len(states)
        trace.append((mu, present, states[state_index].energy.real if present else None))
        logger.debug(f"mu={mu:.8g}: level {state_index} {'bound' if present else 'absent'}")
        return present

    if not exists(mu_lo):
        raise BracketingError(f"level {state_index} is not bound at mu_lo={mu_lo}", trace)
    if exists(mu_hi):
        raise BracketingError(f"level {state_index} is still bound at mu_hi={mu_hi}", trace)

    lo, hi = mu_lo, mu_hi
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if exists(mid):
            lo = mid
        else:
            hi = mid

    mu_c = 0.5 * (lo + hi)
    k = state_index + spec.ell + 1
    logger.info(f"Critical screening for {model.name} n={k} ell={spec.ell}: mu_c={mu_c:.6f} (+/- {tolerance})")
    return CriticalScreeningResult(
        mu_c=mu_c, method="bisection", k=k, ell=spec.ell, tolerance=tolerance, trace=tuple(trace)
    )


def state_label(k: int, ell: int) -> str:
    """Spectroscopic label such as 3s or 4f."""
    letters = "spdfghiklmnoqrtuv"
    return f"{k}{letters[ell] if ell < len(letters) else f'[{ell}]'}"
