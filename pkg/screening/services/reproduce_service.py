"""Golden-table reproduction harness."""
import logging
import math
import re
from itertools import groupby
from typing import Optional

from screening.config import get_settings
from screening.data.golden_tables import GOLDEN_CRITICAL, GOLDEN_ROWS, TABLE_IDS
from screening.models.basis import BasisSpec
from screening.models.golden import GoldenCritical, GoldenRow, ReproductionReport, RowOutcome
from screening.services.potential_service import critical_screening_fit, hulthen_s_wave_energy, make_potential
from screening.services.scan_service import critical_screening_numeric
from screening.services.spectra_service import SpectralEngine
from screening.utils.exceptions import CapabilityError, ScreeningException
from screening.utils.parallel import parallel_map

logger = logging.getLogger(__name__)


def principal_number(state: str) -> int:
    match = re.match(r"(\d+)", state)
    if match is None:
        raise ValueError(f"state label '{state}' has no principal quantum number")
    return int(match.group(1))


def reference_energy(row: GoldenRow) -> complex:
    """Closed-form Hulthen s-wave energy for hard s-wave rows, the published value otherwise."""
    if row.hard and row.potential == "hulthen" and row.ell == 0:
        exact = hulthen_s_wave_energy(principal_number(row.state), row.strength, row.mu)
        if not math.isnan(exact):
            return complex(exact)
    return complex(row.energy)


def compare(row: GoldenRow, computed: complex, reference: complex) -> tuple[float, bool]:
    """(deviation, within tolerance) under the row's tolerance rule."""
    if row.abs_tol is not None:
        deviation = abs(computed - reference)
        return deviation, deviation <= row.abs_tol
    if row.imag_factor is not None:
        deviation = abs(computed.real - reference.real) / abs(reference.real)
        ratio = computed.imag / reference.imag if reference.imag else math.inf
        in_band = 1 / row.imag_factor <= ratio <= row.imag_factor
        return deviation, deviation <= row.rel_tol and in_band
    deviation = abs(computed - reference) / abs(reference)
    return deviation, deviation <= row.rel_tol


def _params(row) -> str:
    return f"{row.potential} ell={row.ell} mu={row.mu} N={row.n_basis} lambda={row.lam}"


def _group_key(row: GoldenRow):
    return (row.potential, row.ell, row.mu, row.n_basis, row.lam, row.strength)


def _run_group(rows: list[GoldenRow], mode: str) -> list[RowOutcome]:
    head = rows[0]
    model = make_potential(head.potential, strength=head.strength, mu=head.mu)
    spec = BasisSpec(ell=head.ell, lam=head.lam, n_basis=head.n_basis)
    outcomes = []
    try:
        engine = SpectralEngine.build(spec, model, mode=mode)
        bound = engine.find_bound_states() if any(r.kind == "bound" for r in rows) else []
        resonances = []
        if any(r.kind == "resonance" for r in rows):
            try:
                resonances = engine.find_resonances()
            except CapabilityError as e:
                logger.warning(f"{_params(head)}: {e}")
    except ScreeningException as e:
        logger.error(f"{_params(head)}: engine failed: {e}")
        return [
            RowOutcome(r.state, _params(r), reference_energy(r), None, math.inf, False, r.hard, str(e)) for r in rows
        ]

    for row in rows:
        reference = reference_energy(row)
        pool = bound if row.kind == "bound" else resonances
        if not pool:
            outcomes.append(
                RowOutcome(row.state, _params(row), reference, None, math.inf, False, row.hard, f"no {row.kind} found")
            )
            continue
        computed = min(pool, key=lambda p: abs(p.energy - reference)).energy
        deviation, passed = compare(row, computed, reference)
        outcomes.append(
            RowOutcome(row.state, _params(row), reference, computed, deviation, passed, row.hard, row.note)
        )
    return outcomes


def _run_critical(entry: GoldenCritical, mode: str) -> list[RowOutcome]:
    label = f"mu_c({entry.state})"
    params = f"{entry.potential} ell={entry.ell}"
    outcomes = []
    if entry.potential == "hulthen":
        fitted = critical_screening_fit(entry.k, entry.ell)
        deviation = abs(fitted - entry.mu_c)
        outcomes.append(
            RowOutcome(label, params + " fit", entry.mu_c, fitted, deviation, deviation <= entry.abs_tol, entry.hard)
        )
    if entry.mu_bracket is not None:
        model = make_potential(entry.potential, mu=entry.mu_bracket[0])
        spec = BasisSpec(ell=entry.ell, lam=entry.lam, n_basis=entry.n_basis)
        reference = complex(entry.mu_c)
        try:
            result = critical_screening_numeric(
                model, spec, entry.k - entry.ell - 1, entry.mu_bracket[0], entry.mu_bracket[1], mode=mode
            )
        except ScreeningException as e:
            outcomes.append(RowOutcome(label, params + " bisection", reference, None, math.inf, False, entry.hard, str(e)))
        else:
            deviation = abs(result.mu_c - entry.mu_c)
            outcomes.append(
                RowOutcome(
                    label, params + " bisection", reference, result.mu_c, deviation,
                    deviation <= entry.abs_tol, entry.hard,
                )
            )
    return outcomes


def reproduce_table(
    table_id: str, mode: Optional[str] = None, include_critical: bool = True, threads: Optional[int] = None
) -> ReproductionReport:
    """Run every row of a published table at its own (N, lambda, mu, ell) and compare."""
    if table_id not in TABLE_IDS:
        raise ValueError(f"Unknown table '{table_id}'. Use one of {TABLE_IDS}.")
    mode = mode or get_settings().default_mode
    rows = GOLDEN_ROWS[table_id]
    groups = [list(g) for _, g in groupby(sorted(rows, key=_group_key), key=_group_key)]
    logger.info(f"Reproducing table {table_id}: {len(rows)} rows in {len(groups)} basis groups, mode={mode}")

    outcomes: list[RowOutcome] = []
    for group_outcomes in parallel_map(lambda g: _run_group(g, mode), groups, threads):
        outcomes.extend(group_outcomes)
    if include_critical:
        for critical_outcomes in parallel_map(lambda c: _run_critical(c, mode), GOLDEN_CRITICAL[table_id], threads):
            outcomes.extend(critical_outcomes)

    report = ReproductionReport(table_id=table_id, mode=mode, outcomes=tuple(outcomes))
    if table_id == "4":
        logger.info("Table 4 is advisory: the piecewise envelope is ambiguous, both presets are reported")
    for failure in report.hard_failures:
        logger.warning(f"Hard gate failed: {failure.label} {failure.params} deviation={failure.deviation:.3e}")
    return report
