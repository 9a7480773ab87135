"""Run configuration: file (JSON or TOML) plus command-line overrides."""
from pathlib import Path
from typing import Any, Literal, Optional
import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from pydantic import Field, ValidationError, field_validator, model_validator

from screening.config import KINEMATICS_MODES
from screening.models.basis import BasisSpec
from screening.models.potential import PotentialModel
from screening.schemas.base import BaseSchema
from screening.services.potential_service import make_potential, make_superposition
from screening.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)


class SuperpositionItem(BaseSchema):
    weight: float
    kind: Literal["yukawa", "hulthen"]


class PotentialBlock(BaseSchema):
    """Potential V(r) = Z/r - (A/r) F(mu r)."""
    name: str = "hulthen"
    strength: float = Field(1.0, gt=0, alias="A")
    mu: float = Field(..., gt=0)
    bare_charge: float = Field(0.0, alias="Z")
    breakpoints: Optional[list[tuple[float, float]]] = None
    superposition: Optional[list[SuperpositionItem]] = None

    @model_validator(mode="after")
    def model_must_build(self):
        """Run the potential's own checks (F(0) = 1, breakpoint order) at load time."""
        self.build()
        return self

    def build(self) -> PotentialModel:
        if self.superposition:
            return make_superposition(
                [(item.weight, item.kind) for item in self.superposition],
                strength=self.strength, mu=self.mu, bare_charge=self.bare_charge,
            )
        return make_potential(
            self.name, strength=self.strength, mu=self.mu, bare_charge=self.bare_charge,
            breakpoints=self.breakpoints,
        )


class BasisBlock(BaseSchema):
    ell: int = Field(0, ge=0)
    lam: float = Field(..., gt=0, alias="lambda")
    n_basis: int = Field(50, ge=2, alias="N")

    def build(self) -> BasisSpec:
        return BasisSpec(ell=self.ell, lam=self.lam, n_basis=self.n_basis)


class BoundBlock(BaseSchema):
    window: Optional[tuple[float, float]] = None

    @field_validator("window")
    @classmethod
    def window_must_be_negative(cls, v):
        if v is not None and not v[0] < min(v[1], 0.0):
            raise ValueError("window must satisfy E_lo < E_hi and E_lo < 0")
        return v


class ResonanceBlock(BaseSchema):
    theta: Optional[list[float]] = None
    seeds: list[tuple[float, float]] = Field(default_factory=list)

    @field_validator("theta")
    @classmethod
    def angles_must_be_positive(cls, v):
        if v is not None and (not v or any(t <= 0 for t in v)):
            raise ValueError("rotation angles must be a nonempty list of positive values")
        return v


class ScanBlock(BaseSchema):
    lambdas: list[float] = Field(..., min_length=1)
    n_values: list[int] = Field(..., min_length=1)
    kind: Literal["bound", "resonance"] = "bound"
    state_index: int = Field(0, ge=0)
    seed: Optional[tuple[float, float]] = None

    @field_validator("lambdas")
    @classmethod
    def lambdas_must_be_positive(cls, v):
        if any(lam <= 0 for lam in v):
            raise ValueError("every lambda must be positive")
        return v

    @field_validator("n_values")
    @classmethod
    def sizes_must_be_positive(cls, v):
        if any(n < 1 for n in v):
            raise ValueError("every N must be at least 1")
        return v


class CriticalBlock(BaseSchema):
    state_index: int = Field(0, ge=0)
    method: Literal["bisection", "fit"] = "bisection"
    mu_lo: float = Field(0.01, gt=0)
    mu_hi: float = Field(10.0, gt=0)
    tolerance: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def bracket_must_be_ordered(self):
        if self.mu_lo >= self.mu_hi:
            raise ValueError("mu_lo must be below mu_hi")
        return self


class SmatrixBlock(BaseSchema):
    e_min: float = Field(0.01, gt=0)
    e_max: float = Field(2.0, gt=0)
    points: int = Field(200, ge=2)

    @model_validator(mode="after")
    def range_must_be_ordered(self):
        if self.e_min >= self.e_max:
            raise ValueError("e_min must be below e_max")
        return self


class OutputBlock(BaseSchema):
    format: Literal["csv", "json"] = "csv"
    path: Optional[str] = None


class RunConfig(BaseSchema):
    """Everything one CLI invocation needs, validated before any computation."""

    potential: Optional[PotentialBlock] = None
    basis: Optional[BasisBlock] = None
    mode: Optional[str] = None
    bound: BoundBlock = Field(default_factory=BoundBlock)
    resonances: ResonanceBlock = Field(default_factory=ResonanceBlock)
    scan: Optional[ScanBlock] = None
    critical: Optional[CriticalBlock] = None
    smatrix: SmatrixBlock = Field(default_factory=SmatrixBlock)
    output: OutputBlock = Field(default_factory=OutputBlock)

    @field_validator("mode")
    @classmethod
    def mode_must_be_known(cls, v):
        if v is not None and v not in KINEMATICS_MODES:
            raise ValueError(f"mode must be one of {KINEMATICS_MODES}")
        return v


def _deep_merge(base: dict, overrides: dict) -> dict:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config_file(path: str) -> dict[str, Any]:
    """Read a JSON or TOML run configuration."""
    file = Path(path)
    try:
        if file.suffix == ".json":
            return json.loads(file.read_text())
        if file.suffix == ".toml":
            with file.open("rb") as f:
                return tomllib.load(f)
    except (OSError, ValueError) as e:
        raise ConfigError("config", f"cannot read {path}: {e}") from e
    raise ConfigError("config", f"unsupported config format '{file.suffix}'; use .json or .toml")


def parse_config(path: Optional[str] = None, overrides: Optional[dict[str, Any]] = None) -> RunConfig:
    """Validated RunConfig from an optional file; overrides (command-line flags) win."""
    data = load_config_file(path) if path else {}
    data = _deep_merge(data, overrides or {})
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "config"
        raise ConfigError(field, first["msg"]) from e
    logger.debug(f"Run configuration: {config.model_dump(by_alias=True, exclude_none=True)}")
    return config
