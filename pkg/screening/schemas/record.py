"""Output rows: one per pole."""
from typing import Literal, Optional

from pydantic import Field, model_validator

from screening.models.basis import BasisSpec
from screening.models.potential import PotentialModel
from screening.models.results import PoleResult
from screening.schemas.base import BaseSchema

CSV_HEADER = (
    "potential", "ell", "A", "mu", "N", "lambda", "mode", "kind",
    "re_energy", "im_energy", "gamma", "digits_stable", "seed", "iterations",
)


class ResultRecord(BaseSchema):
    """Columns mirror the published table layout; gamma = 2|Im E|."""

    potential: str
    ell: int
    strength: float = Field(..., alias="A")
    mu: float
    n_basis: int = Field(..., alias="N")
    lam: float = Field(..., alias="lambda")
    mode: str
    kind: Literal["bound", "resonance"]
    re_energy: float
    im_energy: float
    gamma: float
    digits_stable: Optional[int] = None
    seed: Literal["harris", "rotation", "user"]
    iterations: int
    converged: bool = True

    @model_validator(mode="after")
    def width_matches_energy(self):
        if abs(self.gamma - 2 * abs(self.im_energy)) > 1e-15 * max(1.0, self.gamma):
            raise ValueError(f"gamma={self.gamma} differs from 2|Im E|={2 * abs(self.im_energy)}")
        return self

    @classmethod
    def from_pole(cls, pole: PoleResult, model: PotentialModel, spec: BasisSpec, mode: str) -> "ResultRecord":
        pole.validate()
        return cls(
            potential=model.name,
            ell=spec.ell,
            strength=model.strength,
            mu=model.mu,
            n_basis=spec.n_basis,
            lam=spec.lam,
            mode=mode,
            kind=pole.kind,
            re_energy=pole.energy.real,
            im_energy=pole.energy.imag,
            gamma=pole.gamma,
            digits_stable=pole.digits_stable,
            seed=pole.seed,
            iterations=pole.report.iterations,
            converged=pole.converged,
        )
