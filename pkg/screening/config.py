"""Library configuration management."""
from functools import lru_cache
from typing import Optional
import logging

from pydantic import model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

KINEMATICS_MODES = ("table1-free", "coulomb")


class Settings(BaseSettings):
    """Numerical tunables loaded from SPECTRA_* environment variables."""

    # Execution
    threads: int = 1  # SPECTRA_THREADS caps parallel fan-out
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Kinematics
    default_mode: str = "table1-free"
    table1_variant: str = "normalized"  # "printed" reproduces Table 1 verbatim

    # Root finding
    muller_tol: float = 1e-12
    muller_max_iter: int = 100
    brent_xtol: float = 1e-15

    # Continued fractions
    cf_tol: float = 1e-13
    cf_initial_depth: int = 64
    cf_max_depth: int = 200_000

    # Searches
    bisection_tol: float = 1e-4
    near_zero_energy: float = 1e-6  # below this |E| the engine retries with a wider basis
    bound_energy_ceiling: float = -1e-12
    harris_pole_guard: float = 1e-14

    @model_validator(mode="after")
    def validate_all_config(self):
        """Reject out-of-range tunables."""
        logger = logging.getLogger(__name__)

        if self.threads < 1:
            raise ValueError("threads must be at least 1")

        if self.default_mode not in KINEMATICS_MODES:
            raise ValueError(
                f"Unsupported kinematics mode: {self.default_mode}. Use one of {KINEMATICS_MODES}."
            )

        if self.table1_variant not in ("normalized", "printed"):
            raise ValueError("table1_variant must be 'normalized' or 'printed'")

        for name in ("muller_tol", "cf_tol", "bisection_tol", "near_zero_energy", "brent_xtol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

        if self.bound_energy_ceiling >= 0:
            raise ValueError("bound_energy_ceiling must be negative")

        if self.cf_initial_depth < 2 or self.cf_max_depth < self.cf_initial_depth:
            raise ValueError("cf_max_depth must be at least cf_initial_depth (>= 2)")

        logger.debug(f"Settings validated: threads={self.threads}, mode={self.default_mode}")
        return self

    model_config = SettingsConfigDict(
        env_prefix="SPECTRA_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
