"""Carriers for the linear-algebra and root-finding kernels."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TridiagonalSymmetric:
    """Real symmetric tridiagonal matrix stored as its two bands."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=float)
        offdiag = np.asarray(self.offdiag, dtype=float)
        if diag.ndim != 1 or diag.size < 1:
            raise ValueError("diag must be a non-empty vector")
        if offdiag.shape != (diag.size - 1,):
            raise ValueError(f"offdiag must have length {diag.size - 1}, got {offdiag.size}")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def dim(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def leading(self, size: int) -> "TridiagonalSymmetric":
        """Leading principal size x size block."""
        return TridiagonalSymmetric(self.diag[:size], self.offdiag[: size - 1])


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with eigenvectors stored column-wise."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class RootFindReport:
    """Outcome of a complex root search."""

    root: complex
    iterations: int
    residual: float
    converged: bool
