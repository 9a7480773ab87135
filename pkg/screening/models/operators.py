"""Finite-matrix carriers of the J-matrix problem."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from screening.models.basis import BasisSpec
from screening.models.kernels import TridiagonalSymmetric
from screening.models.potential import PotentialModel


@dataclass(frozen=True)
class OperatorSet:
    """Omega, H0, U and H = H0 + U in the first N basis functions; model is None for the bare reference."""

    spec: BasisSpec
    model: Optional[PotentialModel]
    theta_rot: float
    omega: TridiagonalSymmetric
    h0: np.ndarray
    u: np.ndarray

    @property
    def h(self) -> np.ndarray:
        return self.h0 + self.u

    @property
    def rotated(self) -> bool:
        return self.theta_rot != 0.0

    @property
    def size(self) -> int:
        return self.spec.n_basis


@dataclass(frozen=True)
class HarrisSpectrum:
    """Generalized eigenvalues of (H, Omega) and of its leading (N-1) block."""

    eps: np.ndarray
    eps_trunc: np.ndarray
    vectors: np.ndarray
