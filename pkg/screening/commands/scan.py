"""scan: follow one pole over a (lambda, N) grid and report its plateau value."""
import logging

from screening.commands.common import EXIT_FAILURE, EXIT_OK, require_problem, resolved_mode
from screening.schemas.config import RunConfig
from screening.schemas.record import ResultRecord
from screening.services.report_writer import render_records, write_output
from screening.services.scan_service import plateau_scan
from screening.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> int:
    if config.scan is None:
        raise ConfigError("scan", "a scan block (or --lambdas/--n-values flags) is required")
    model, spec = require_problem(config)
    mode = resolved_mode(config)
    block = config.scan
    seed = complex(*block.seed) if block.seed is not None else None
    report = plateau_scan(
        model, spec.ell, block.lambdas, block.n_values, kind=block.kind, state_index=block.state_index,
        seed=seed, mode=mode, theta_grid=config.resonances.theta,
    )
    for note in report.notes:
        logger.info(f"scan: {note}")
    if report.pole is None:
        logger.error("scan: tracked state was never found")
        write_output(render_records([], config.output.format), config.output.path)
        return EXIT_FAILURE

    chosen = spec.with_size(report.n_basis[report.chosen]).with_scale(report.lambdas[report.chosen])
    record = ResultRecord.from_pole(report.pole, model, chosen, mode)
    write_output(render_records([record], config.output.format), config.output.path)
    if not report.stable:
        logger.warning("scan: no stable plateau; best candidate reported")
        return EXIT_FAILURE
    return EXIT_OK
