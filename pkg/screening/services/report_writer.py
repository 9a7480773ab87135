"""Deterministic CSV / JSON output for result records, S-matrix scans and reproduction reports."""
import csv
import io
import json
import logging
import math
from decimal import ROUND_DOWN, Decimal
from typing import Optional, Sequence

from screening.models.golden import ReproductionReport
from screening.schemas.record import CSV_HEADER, ResultRecord

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


def format_number(value: float) -> str:
    """Scientific notation, 12 significant digits."""
    if math.isnan(value):
        return "nan"
    return f"{value:.{SIGNIFICANT_DIGITS - 1}e}"


def truncate_digits(value: float, digits: Optional[int]) -> str:
    """Keep only the stable digits, truncated toward zero rather than rounded."""
    if digits is None or digits >= SIGNIFICANT_DIGITS or value == 0 or not math.isfinite(value):
        return format_number(value)
    digits = max(digits, 1)
    exponent = math.floor(math.log10(abs(value)))
    mantissa = Decimal(repr(value)).scaleb(-exponent)
    kept = mantissa.quantize(Decimal(1).scaleb(-(digits - 1)), rounding=ROUND_DOWN)
    return f"{kept}e{exponent:+03d}"


def _csv_row(record: ResultRecord) -> list[str]:
    im_digits = record.digits_stable
    if record.digits_stable is not None and record.im_energy != 0 and record.re_energy != 0:
        # the width inherits the absolute accuracy of the real part
        scale = math.log10(abs(record.re_energy) / abs(record.im_energy))
        im_digits = max(1, int(record.digits_stable - math.ceil(scale)))
    return [
        record.potential,
        str(record.ell),
        format_number(record.strength),
        format_number(record.mu),
        str(record.n_basis),
        format_number(record.lam),
        record.mode,
        record.kind,
        truncate_digits(record.re_energy, record.digits_stable),
        truncate_digits(record.im_energy, im_digits),
        truncate_digits(record.gamma, im_digits),
        "" if record.digits_stable is None else str(record.digits_stable),
        record.seed,
        str(record.iterations),
    ]


def records_to_csv(records: Sequence[ResultRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(_csv_row(record))
    return buffer.getvalue()


def records_to_json(records: Sequence[ResultRecord]) -> str:
    """Full-precision values."""
    payload = [record.model_dump(by_alias=True) for record in records]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_records(records: Sequence[ResultRecord], fmt: str = "csv") -> str:
    if fmt == "csv":
        return records_to_csv(records)
    if fmt == "json":
        return records_to_json(records)
    raise ValueError(f"Unknown output format '{fmt}'")


def smatrix_to_csv(energies: Sequence[float], values: Sequence[complex]) -> str:
    """|S(E)| and arg S(E) on a real energy grid."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("energy", "abs_s", "arg_s", "re_s", "im_s"))
    for energy, value in zip(energies, values):
        writer.writerow(
            (
                format_number(energy),
                format_number(abs(value)),
                format_number(math.atan2(value.imag, value.real)),
                format_number(value.real),
                format_number(value.imag),
            )
        )
    return buffer.getvalue()


def smatrix_to_json(energies: Sequence[float], values: Sequence[complex]) -> str:
    payload = [
        {"energy": e, "abs_s": abs(v), "arg_s": math.atan2(v.imag, v.real), "re_s": v.real, "im_s": v.imag}
        for e, v in zip(energies, values)
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _format_value(value) -> str:
    if value is None:
        return "-"
    value = complex(value)
    if value.imag == 0:
        return format_number(value.real)
    return f"{format_number(value.real)} {'-' if value.imag < 0 else '+'}i {format_number(abs(value.imag))}"


def reproduction_table(report: ReproductionReport) -> str:
    """Human-readable deviation table."""
    lines = [f"Table {report.table_id} (mode={report.mode})"]
    lines.append(f"{'state':<10} {'gate':<9} {'status':<6} {'deviation':>10}  parameters / reference / computed")
    for outcome in report.outcomes:
        gate = "hard" if outcome.hard else "advisory"
        status = "PASS" if outcome.passed else "FAIL"
        deviation = "inf" if math.isinf(outcome.deviation) else f"{outcome.deviation:.3e}"
        lines.append(
            f"{outcome.label:<10} {gate:<9} {status:<6} {deviation:>10}  {outcome.params} | "
            f"{_format_value(outcome.reference)} | {_format_value(outcome.computed)}"
            + (f" ({outcome.note})" if outcome.note else "")
        )
    verdict = "all hard gates passed" if report.passed else f"{len(report.hard_failures)} hard gate(s) failed"
    lines.append(verdict)
    return "\n".join(lines) + "\n"


def write_output(text: str, path: Optional[str] = None) -> None:
    """Write to path, or to stdout when no path is given."""
    if path is None:
        print(text, end="")
        return
    with open(path, "w", newline="") as f:
        f.write(text)
    logger.info(f"Wrote {path}")
