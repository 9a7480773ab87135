"""Screened-Coulomb potential models V(r) = -(A/r) F(mu r) + Z/r."""
from dataclasses import dataclass
from typing import Annotated, Literal, Union
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from screening.utils.exceptions import CapabilityError

# (1 - F(x))/x switches to its Taylor series below these |x|
_YUKAWA_SERIES_CUTOFF = 1e-8
_HULTHEN_SERIES_CUTOFF = 1e-2
# expm1 overflows just past Re x = 709
_HULTHEN_OVERFLOW = 700.0


def _as_array(x) -> np.ndarray:
    return np.asarray(x, dtype=complex if np.iscomplexobj(x) else float)


class YukawaEnvelope(BaseModel):
    """F(x) = exp(-x)."""

    model_config = ConfigDict(frozen=True)
    kind: Literal["yukawa"] = "yukawa"

    @property
    def analytic(self) -> bool:
        return True

    @property
    def max_rotation(self) -> float:
        return math.pi / 2

    def value(self, x):
        return np.exp(-_as_array(x))

    def reduced(self, x):
        """(1 - F(x))/x with its x -> 0 limit."""
        x = _as_array(x)
        small = np.abs(x) < _YUKAWA_SERIES_CUTOFF
        safe = np.where(small, 1.0, x)
        return np.where(small, 1.0 - x / 2, -np.expm1(-safe) / safe)

    def slope_at_zero(self) -> float:
        return -1.0


class HulthenEnvelope(BaseModel):
    """F(x) = x/(exp(x) - 1)."""

    model_config = ConfigDict(frozen=True)
    kind: Literal["hulthen"] = "hulthen"

    @property
    def analytic(self) -> bool:
        return True

    @property
    def max_rotation(self) -> float:
        # poles of F at x = 2 pi i k stay off the rotated ray
        return math.pi / 2

    def _inverse_expm1(self, x):
        """1/(e^x - 1) without overflow; e^{-x} once Re x passes the overflow threshold."""
        large = np.real(x) > _HULTHEN_OVERFLOW
        small_arg = np.where(large, 1.0, x)
        large_arg = np.where(large, x, _HULTHEN_OVERFLOW)
        return np.where(large, np.exp(-large_arg), 1.0 / np.expm1(small_arg))

    def value(self, x):
        x = _as_array(x)
        small = np.abs(x) < _HULTHEN_SERIES_CUTOFF
        safe = np.where(small, 1.0, x)
        series = 1.0 - x / 2 + x**2 / 12 - x**4 / 720
        return np.where(small, series, safe * self._inverse_expm1(safe))

    def reduced(self, x):
        x = _as_array(x)
        small = np.abs(x) < _HULTHEN_SERIES_CUTOFF
        safe = np.where(small, 1.0, x)
        series = 0.5 - x / 12 + x**3 / 720 - x**5 / 30240
        return np.where(small, series, 1.0 / safe - self._inverse_expm1(safe))

    def slope_at_zero(self) -> float:
        return -0.5


class PiecewiseEnvelope(BaseModel):
    """Linear interpolation through breakpoints; F = 0 beyond the last one.

    Repeated abscissae encode jumps; the value at a repeated abscissa is the
    one of the last breakpoint listed there.
    """

    model_config = ConfigDict(frozen=True)
    kind: Literal["piecewise"] = "piecewise"
    points: tuple[tuple[float, float], ...]

    @property
    def analytic(self) -> bool:
        return False

    @property
    def max_rotation(self) -> float:
        return 0.0

    @field_validator("points")
    @classmethod
    def points_must_be_ordered(cls, v):
        if len(v) < 2:
            raise ValueError("piecewise envelope needs at least two breakpoints")
        xs = [p[0] for p in v]
        if xs[0] != 0.0:
            raise ValueError("first breakpoint must sit at x = 0")
        if any(b < a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint abscissae must be non-decreasing")
        return tuple((float(x), float(y)) for x, y in v)

    @property
    def _xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def _ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    def value(self, x):
        if np.iscomplexobj(x):
            raise CapabilityError("piecewise envelope is not analytic; complex arguments are unsupported")
        x = np.asarray(x, dtype=float)
        xs, ys = self._xs, self._ys
        idx = np.clip(np.searchsorted(xs, x, side="right") - 1, 0, xs.size - 2)
        # idx is the last breakpoint at or left of x, so xs[idx + 1] > xs[idx] inside the support
        x0, x1 = xs[idx], xs[idx + 1]
        width = np.where(x1 > x0, x1 - x0, 1.0)
        inside = ys[idx] + (ys[idx + 1] - ys[idx]) * (x - x0) / width
        last = np.where(x == xs[-1], ys[-1], 0.0)
        return np.where(x < xs[-1], inside, last)

    def reduced(self, x):
        x = np.asarray(x, dtype=float)
        small = np.abs(x) < 1e-12
        safe = np.where(small, 1.0, x)
        return np.where(small, -self.slope_at_zero(), (1.0 - self.value(safe)) / safe)

    def slope_at_zero(self) -> float:
        (x0, y0), (x1, y1) = self.points[0], self.points[1]
        return (y1 - y0) / (x1 - x0)


class SuperpositionTerm(BaseModel):
    model_config = ConfigDict(frozen=True)
    weight: float
    envelope: "Envelope"


class SuperpositionEnvelope(BaseModel):
    """Weighted sum of envelopes."""

    model_config = ConfigDict(frozen=True)
    kind: Literal["superposition"] = "superposition"
    terms: tuple[SuperpositionTerm, ...] = Field(..., min_length=1)

    @property
    def analytic(self) -> bool:
        return all(t.envelope.analytic for t in self.terms)

    @property
    def max_rotation(self) -> float:
        return min(t.envelope.max_rotation for t in self.terms)

    @property
    def total_weight(self) -> float:
        return sum(t.weight for t in self.terms)

    def value(self, x):
        return sum(t.weight * t.envelope.value(x) for t in self.terms)

    def reduced(self, x):
        x = _as_array(x)
        result = sum(t.weight * t.envelope.reduced(x) for t in self.terms)
        leftover = 1.0 - self.total_weight
        if leftover != 0.0:
            result = result + leftover / x
        return result

    def slope_at_zero(self) -> float:
        return sum(t.weight * t.envelope.slope_at_zero() for t in self.terms)


Envelope = Annotated[
    Union[YukawaEnvelope, HulthenEnvelope, PiecewiseEnvelope, SuperpositionEnvelope],
    Field(discriminator="kind"),
]
SuperpositionTerm.model_rebuild()
SuperpositionEnvelope.model_rebuild()


class PotentialModel(BaseModel):
    """Strength A, screening mu, bare charge Z and envelope F."""

    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    strength: float = Field(1.0, gt=0)
    mu: float = Field(..., gt=0)
    bare_charge: float = 0.0
    envelope: Envelope

    @model_validator(mode="after")
    def envelope_must_start_at_unity(self):
        """Coulomb-like behaviour at the origin requires F(0) = 1."""
        f0 = float(np.real(self.envelope.value(np.array(0.0))))
        if abs(f0 - 1.0) > 1e-12:
            raise ValueError(f"envelope must satisfy F(0) = 1, got {f0}")
        return self

    @property
    def z_tilde(self) -> float:
        """Effective charge Z - A carried by the reference Hamiltonian."""
        return self.bare_charge - self.strength

    @property
    def analytic(self) -> bool:
        return self.envelope.analytic

    def with_parameters(self, strength: float | None = None, mu: float | None = None) -> "PotentialModel":
        return self.model_copy(
            update={
                "strength": self.strength if strength is None else strength,
                "mu": self.mu if mu is None else mu,
            }
        )


@dataclass(frozen=True)
class CriticalScreeningResult:
    """Screening parameter at which a tracked state reaches E = 0."""

    mu_c: float
    method: Literal["fit", "bisection"]
    k: int
    ell: int
    tolerance: float
    trace: tuple = ()

    def __post_init__(self):
        if self.mu_c <= 0:
            raise ValueError("mu_c must be positive")
