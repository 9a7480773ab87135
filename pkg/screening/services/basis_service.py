"""Laguerre basis bookkeeping: overlap matrix and its Gauss quadrature rule."""
from functools import lru_cache
import logging

import numpy as np

from screening.models.basis import BasisSpec, QuadratureRule
from screening.models.kernels import TridiagonalSymmetric
from screening.utils.kernels import sym_tridiag_eigen

logger = logging.getLogger(__name__)


def overlap_bands(ell: int, n_basis: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal 2n+nu+1 and off-diagonal -sqrt((n+1)(n+nu+1)) of <phi_n|phi_m>."""
    nu = 2 * ell + 1
    n = np.arange(n_basis, dtype=float)
    diag = 2 * n + nu + 1
    offdiag = -np.sqrt((n[:-1] + 1) * (n[:-1] + nu + 1))
    return diag, offdiag


def build_overlap(spec: BasisSpec) -> TridiagonalSymmetric:
    """Dimensionless tridiagonal overlap matrix of the basis."""
    diag, offdiag = overlap_bands(spec.ell, spec.n_basis)
    return TridiagonalSymmetric(diag=diag, offdiag=offdiag)


@lru_cache(maxsize=64)
def _quadrature_rule(ell: int, n_basis: int) -> QuadratureRule:
    diag, offdiag = overlap_bands(ell, n_basis)
    eig = sym_tridiag_eigen(TridiagonalSymmetric(diag=diag, offdiag=offdiag))
    vectors = eig.vectors * np.where(eig.vectors[0] < 0, -1.0, 1.0)
    vectors.setflags(write=False)
    nodes = eig.values.copy()
    nodes.setflags(write=False)
    logger.debug(f"Quadrature rule ell={ell}, N={n_basis}: nodes in [{nodes[0]:.4g}, {nodes[-1]:.4g}]")
    return QuadratureRule(nodes=nodes, vectors=vectors)


def quadrature_rule(spec: BasisSpec) -> QuadratureRule:
    """Eigendecomposition of the overlap, nodes ascending, Lambda_{0,k} > 0.

    The rule depends on (ell, N) only; lambda enters through the radius
    r_k = node_k / lambda at which the potential is sampled.
    """
    return _quadrature_rule(spec.ell, spec.n_basis)


def laguerre_values(n_max: int, nu: float, x: np.ndarray) -> np.ndarray:
    """L_0^nu .. L_{n_max}^nu at x by the three-term recurrence (rows indexed by degree)."""
    x = np.asarray(x, dtype=float)
    values = np.empty((n_max + 1,) + x.shape)
    values[0] = 1.0
    if n_max >= 1:
        values[1] = 1.0 + nu - x
    for n in range(1, n_max):
        values[n + 1] = ((2 * n + 1 + nu - x) * values[n] - (n + nu) * values[n - 1]) / (n + 1)
    return values
