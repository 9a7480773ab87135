"""critical: screening parameter at which a level leaves the bound spectrum."""
import csv
import io
import json
import logging

from screening.commands.common import EXIT_OK, require_problem, resolved_mode
from screening.models.potential import CriticalScreeningResult
from screening.schemas.config import RunConfig
from screening.services.potential_service import critical_screening_fit
from screening.services.report_writer import format_number, write_output
from screening.services.scan_service import critical_screening_numeric, state_label
from screening.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

CRITICAL_HEADER = ("potential", "ell", "k", "A", "mu_c", "a_c", "method", "tolerance")


def _render(result: CriticalScreeningResult, name: str, strength: float, mu: float, fmt: str) -> str:
    # A_c at the configured mu follows from E(A, mu) = A^2 E(1, mu/A)
    a_c = mu * strength / result.mu_c
    if fmt == "json":
        payload = {
            "potential": name, "state": state_label(result.k, result.ell), "ell": result.ell, "k": result.k,
            "A": strength, "mu_c": result.mu_c,
            "a_c": a_c, "method": result.method, "tolerance": result.tolerance,
            "trace": [{"mu": m, "bound": b, "energy": e} for m, b, e in result.trace],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CRITICAL_HEADER)
    writer.writerow(
        (
            name, result.ell, result.k, format_number(strength), format_number(result.mu_c),
            format_number(a_c), result.method, format_number(result.tolerance),
        )
    )
    return buffer.getvalue()


def run(config: RunConfig) -> int:
    if config.critical is None:
        raise ConfigError("critical", "a critical block (or --mu-lo/--mu-hi flags) is required")
    model, spec = require_problem(config)
    block = config.critical
    k = block.state_index + spec.ell + 1
    if block.method == "fit":
        if model.envelope.kind != "hulthen":
            raise ConfigError("critical.method", "the fitted formula exists for the Hulthen potential only")
        mu_c = critical_screening_fit(k, spec.ell, model.strength)
        result = CriticalScreeningResult(mu_c=mu_c, method="fit", k=k, ell=spec.ell, tolerance=0.0)
    else:
        result = critical_screening_numeric(
            model, spec, block.state_index, block.mu_lo, block.mu_hi,
            tolerance=block.tolerance, mode=resolved_mode(config),
        )
    logger.info(f"critical: mu_c={result.mu_c:.6f} ({result.method}) for {state_label(k, spec.ell)}")
    write_output(_render(result, model.name, model.strength, model.mu, config.output.format), config.output.path)
    return EXIT_OK
