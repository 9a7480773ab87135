"""reproduce: rerun a published table and compare row by row."""
import json
import logging

from screening.commands.common import EXIT_FAILURE, EXIT_OK, resolved_mode
from screening.models.golden import ReproductionReport
from screening.schemas.config import RunConfig
from screening.services.report_writer import reproduction_table, write_output
from screening.services.reproduce_service import reproduce_table

logger = logging.getLogger(__name__)


def _as_json(report: ReproductionReport) -> str:
    def encode(value):
        if value is None:
            return None
        value = complex(value)
        return [value.real, value.imag]

    payload = {
        "table": report.table_id,
        "mode": report.mode,
        "passed": report.passed,
        "rows": [
            {
                "label": o.label, "params": o.params, "reference": encode(o.reference),
                "computed": encode(o.computed), "deviation": o.deviation, "passed": o.passed,
                "hard": o.hard, "note": o.note,
            }
            for o in report.outcomes
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run(config: RunConfig, table_id: str, include_critical: bool = True) -> int:
    report = reproduce_table(table_id, mode=resolved_mode(config), include_critical=include_critical)
    text = _as_json(report) if config.output.format == "json" else reproduction_table(report)
    write_output(text, config.output.path)
    if not report.passed:
        logger.error(f"reproduce {table_id}: {len(report.hard_failures)} hard gate(s) failed")
        return EXIT_FAILURE
    return EXIT_OK
