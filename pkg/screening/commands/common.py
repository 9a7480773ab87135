"""Helpers shared by the subcommands."""
import logging

from screening.config import get_settings
from screening.models.basis import BasisSpec
from screening.models.potential import PotentialModel
from screening.models.results import PoleResult
from screening.schemas.config import RunConfig
from screening.schemas.record import ResultRecord
from screening.services.report_writer import render_records, write_output
from screening.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FAILURE = 3


def require_problem(config: RunConfig) -> tuple[PotentialModel, BasisSpec]:
    """Potential and basis blocks, both mandatory for the spectral commands."""
    if config.potential is None:
        raise ConfigError("potential", "a potential block (or --potential/--mu flags) is required")
    if config.basis is None:
        raise ConfigError("basis", "a basis block (or --lambda/--N flags) is required")
    return config.potential.build(), config.basis.build()


def resolved_mode(config: RunConfig) -> str:
    return config.mode or get_settings().default_mode


def emit_poles(
    poles: list[PoleResult], model: PotentialModel, spec: BasisSpec, mode: str, config: RunConfig
) -> int:
    """Write one record per pole; exit 3 when any search did not converge."""
    records = [ResultRecord.from_pole(p, model, spec, mode) for p in poles]
    write_output(render_records(records, config.output.format), config.output.path)
    failed = [p for p in poles if not p.converged]
    if failed:
        logger.warning(f"{len(failed)} of {len(poles)} pole search(es) did not converge")
        return EXIT_FAILURE
    return EXIT_OK
