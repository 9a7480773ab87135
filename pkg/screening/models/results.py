"""Spectral search results."""
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from screening.models.kernels import RootFindReport

PoleKind = Literal["bound", "resonance"]
SeedProvenance = Literal["harris", "rotation", "user"]


@dataclass(frozen=True)
class PoleResult:
    """One S-matrix pole: a bound state or a resonance."""

    energy: complex
    kind: PoleKind
    seed: SeedProvenance
    report: RootFindReport
    digits_stable: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "energy", complex(self.energy))
        self.validate()

    @property
    def gamma(self) -> float:
        """Width Gamma = 2 |Im E|."""
        return 2.0 * abs(self.energy.imag)

    @property
    def converged(self) -> bool:
        return self.report.converged

    def validate(self) -> None:
        """Raise ValueError unless the energy sits where its kind says it must."""
        if self.kind == "bound":
            if self.energy.imag != 0.0 or not self.energy.real < 0.0:
                raise ValueError(f"bound state must be real and negative, got {self.energy}")
        elif self.kind == "resonance":
            if not (self.energy.real > 0.0 and self.energy.imag < 0.0):
                raise ValueError(f"resonance must have Re E > 0 and Im E < 0, got {self.energy}")
        else:
            raise ValueError(f"unknown pole kind '{self.kind}'")
        if self.digits_stable is not None and self.digits_stable < 0:
            raise ValueError("digits_stable must be nonnegative")

    def with_digits(self, digits: Optional[int]) -> "PoleResult":
        return PoleResult(
            energy=self.energy, kind=self.kind, seed=self.seed, report=self.report, digits_stable=digits
        )


def sort_poles(poles: list[PoleResult]) -> list[PoleResult]:
    """Deterministic order: by Re E, then Im E."""
    return sorted(poles, key=lambda p: (p.energy.real, p.energy.imag))


@dataclass(frozen=True)
class PlateauReport:
    """Energies over a (lambda, N) sweep and the window where they stop moving."""

    lambdas: tuple[float, ...]
    n_basis: tuple[int, ...]
    energies: np.ndarray
    changes: np.ndarray
    window: tuple[int, int]
    pole: Optional[PoleResult]
    stable: bool
    notes: list[str] = field(default_factory=list)
    chosen: Optional[int] = None

    @property
    def digits_stable(self) -> Optional[int]:
        return None if self.pole is None else self.pole.digits_stable
