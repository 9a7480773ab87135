"""Screened-Coulomb potentials: envelopes, effective potential, scaling and critical screening."""
import logging
import math

import numpy as np

from screening.models.potential import (
    HulthenEnvelope,
    PiecewiseEnvelope,
    PotentialModel,
    SuperpositionEnvelope,
    SuperpositionTerm,
    YukawaEnvelope,
)
from screening.utils.exceptions import CapabilityError

logger = logging.getLogger(__name__)

# Second piecewise envelope of the original work, branches as printed:
# x+1 on [0,1), 1 on [1,2], -x+4 on (2,4), 0 beyond.
PAPER_FIG1_POINTS = ((0.0, 1.0), (1.0, 2.0), (1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (4.0, 0.0))
# Same shape with the first branch replaced by the constant 1.
PAPER_FIG1_FLAT_POINTS = ((0.0, 1.0), (2.0, 1.0), (2.0, 2.0), (4.0, 0.0))

PRESETS = ("yukawa", "hulthen", "paper-fig1", "paper-fig1-flat")

# Coefficients of the fitted Hulthen critical screening formula
_FIT_ELL = 0.1654
_FIT_ELL_OVER_K = 0.0983


def make_potential(
    name: str,
    strength: float = 1.0,
    mu: float = 1.0,
    bare_charge: float = 0.0,
    breakpoints=None,
) -> PotentialModel:
    """Build a model from a preset name, or from inline piecewise breakpoints."""
    if breakpoints is not None:
        envelope = PiecewiseEnvelope(points=tuple(tuple(p) for p in breakpoints))
    elif name == "yukawa":
        envelope = YukawaEnvelope()
    elif name == "hulthen":
        envelope = HulthenEnvelope()
    elif name == "paper-fig1":
        envelope = PiecewiseEnvelope(points=PAPER_FIG1_POINTS)
    elif name == "paper-fig1-flat":
        envelope = PiecewiseEnvelope(points=PAPER_FIG1_FLAT_POINTS)
    else:
        raise ValueError(f"Unknown potential preset '{name}'. Use one of {PRESETS} or give breakpoints.")
    return PotentialModel(name=name, strength=strength, mu=mu, bare_charge=bare_charge, envelope=envelope)


def make_superposition(
    weights: list[tuple[float, str]],
    strength: float = 1.0,
    mu: float = 1.0,
    bare_charge: float = 0.0,
) -> PotentialModel:
    """Weighted mix of the analytic envelopes, e.g. [(0.5, "yukawa"), (0.5, "hulthen")]."""
    lookup = {"yukawa": YukawaEnvelope, "hulthen": HulthenEnvelope}
    terms = []
    for weight, kind in weights:
        if kind not in lookup:
            raise ValueError(f"Superposition supports {tuple(lookup)}, got '{kind}'")
        terms.append(SuperpositionTerm(weight=weight, envelope=lookup[kind]()))
    envelope = SuperpositionEnvelope(terms=tuple(terms))
    name = "+".join(kind for _, kind in weights)
    return PotentialModel(name=name, strength=strength, mu=mu, bare_charge=bare_charge, envelope=envelope)


def _check_capability(model: PotentialModel, x) -> None:
    if np.iscomplexobj(x) and not model.analytic:
        raise CapabilityError(
            f"Envelope '{model.envelope.kind}' is not analytic; complex arguments (rotation) unavailable"
        )


def envelope_value(model: PotentialModel, x):
    """F(x) at dimensionless x = mu r."""
    _check_capability(model, x)
    return model.envelope.value(x)


def effective_potential(model: PotentialModel, r):
    """U(r) = (A/r)[1 - F(mu r)], finite at r = 0 where it equals -A mu F'(0)."""
    _check_capability(model, r)
    x = model.mu * np.asarray(r)
    return model.strength * model.mu * model.envelope.reduced(x)


def potential_value(model: PotentialModel, r):
    """Full V(r) = Z/r - (A/r) F(mu r)."""
    _check_capability(model, r)
    r = np.asarray(r)
    return (model.bare_charge - model.strength * model.envelope.value(model.mu * r)) / r


def scale_transform(model: PotentialModel, target_strength: float) -> tuple[PotentialModel, float]:
    """E(A, mu) = A^2 E(1, mu/A): rescale to strength target_A, return the energy factor."""
    if target_strength <= 0:
        raise ValueError("target strength must be positive")
    ratio = target_strength / model.strength
    scaled = model.model_copy(
        update={
            "strength": target_strength,
            "mu": model.mu * ratio,
            "bare_charge": model.bare_charge * ratio,
        }
    )
    return scaled, ratio**2


def scale_to_unit_range(model: PotentialModel) -> tuple[PotentialModel, float]:
    """E(A, mu) = mu^2 E(A/mu, 1): the critical-strength formulation."""
    return scale_transform(model, model.strength / model.mu)


def critical_screening_fit(k: int, ell: int, strength: float = 1.0) -> float:
    """Fitted Hulthen critical screening for principal quantum number k and angular momentum ell."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if k <= ell:
        raise ValueError(f"principal quantum number k={k} must exceed ell={ell}")
    base = (k / math.sqrt(2) + _FIT_ELL * ell + _FIT_ELL_OVER_K * ell / k) ** -2
    return strength * base


def hulthen_s_wave_energy(n: int, strength: float, mu: float) -> float:
    """Closed-form Hulthen s-wave level n; nan once the level has left the spectrum."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if 2 * strength / mu <= n**2:
        return math.nan
    return -(mu**2 / 8) * ((2 * strength / mu - n**2) / n) ** 2


def hulthen_s_wave_critical(n: int, strength: float = 1.0) -> float:
    """Exact mu_c for the Hulthen s-wave level n."""
    return 2 * strength / n**2
