"""Reference rows of the reproduction harness."""
from dataclasses import dataclass
from typing import Literal, Optional


@dataclass(frozen=True)
class GoldenRow:
    """One published energy together with the basis it was computed in.

    ``rel_tol`` bounds |E - E_ref|/|E_ref| (real part only when ``imag_factor``
    is set, in which case Im E may differ from the reference by that factor).
    ``abs_tol`` replaces the relative bound when given. Rows with ``hard=False``
    are reported but never fail a run; ``note`` travels with their outcome.
    """

    table: str
    potential: str
    ell: int
    state: str
    mu: float
    n_basis: int
    lam: float
    energy: complex
    kind: Literal["bound", "resonance"]
    hard: bool = False
    rel_tol: float = 1e-6
    abs_tol: Optional[float] = None
    imag_factor: Optional[float] = None
    strength: float = 1.0
    note: str = ""


@dataclass(frozen=True)
class GoldenCritical:
    """A published critical screening value."""

    table: str
    potential: str
    ell: int
    state: str
    k: int
    mu_c: float
    hard: bool = False
    abs_tol: float = 1e-3
    mu_bracket: Optional[tuple[float, float]] = None
    n_basis: int = 50
    lam: float = 0.4


@dataclass(frozen=True)
class RowOutcome:
    """Computed value for one golden row and how far it is from the reference."""

    label: str
    params: str
    reference: complex
    computed: Optional[complex]
    deviation: float
    passed: bool
    hard: bool
    note: str = ""


@dataclass(frozen=True)
class ReproductionReport:
    table_id: str
    mode: str
    outcomes: tuple[RowOutcome, ...]

    @property
    def hard_failures(self) -> list[RowOutcome]:
        return [o for o in self.outcomes if o.hard and not o.passed]

    @property
    def passed(self) -> bool:
        return not self.hard_failures
