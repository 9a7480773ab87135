"""Numerical kernels: eigensolvers, special functions and complex root finding.

Everything here is pure and re-entrant. Dense and tridiagonal eigenproblems go
through LAPACK via scipy; the generalized symmetric-definite problem is reduced
explicitly so that a failing Cholesky pivot can be reported.
"""
from typing import Callable, Sequence
import cmath
import logging

import numpy as np
from scipy import linalg
from scipy.linalg import get_lapack_funcs
from scipy.special import loggamma

from screening.models.kernels import EigenDecomposition, RootFindReport, TridiagonalSymmetric
from screening.utils.exceptions import EigenSolverError, NotPositiveDefiniteError, SingularPointError

logger = logging.getLogger(__name__)


def sym_tridiag_eigen(m: TridiagonalSymmetric) -> EigenDecomposition:
    """All eigenpairs of a real symmetric tridiagonal matrix, values ascending."""
    if m.dim == 1:
        return EigenDecomposition(values=m.diag.copy(), vectors=np.ones((1, 1)))
    try:
        values, vectors = linalg.eigh_tridiagonal(m.diag, m.offdiag)
    except linalg.LinAlgError as e:
        raise EigenSolverError(f"Tridiagonal eigensolver did not converge (dim={m.dim}): {e}") from e
    return EigenDecomposition(values=values, vectors=vectors)


def cholesky_lower(s: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of a real SPD matrix; names the failing pivot otherwise."""
    s = np.asarray(s, dtype=float)
    potrf, = get_lapack_funcs(("potrf",), (s,))
    factor, info = potrf(s, lower=True, clean=True)
    if info > 0:
        raise NotPositiveDefiniteError(pivot=int(info))
    if info < 0:
        raise EigenSolverError(f"potrf rejected argument {-info}")
    return factor


def _reduce_pencil(h: np.ndarray, factor: np.ndarray) -> np.ndarray:
    """L^{-1} h L^{-T} for the lower Cholesky factor L of the metric."""
    left = linalg.solve_triangular(factor, h, lower=True)
    return linalg.solve_triangular(factor, left.T, lower=True).T


def gen_sym_def_eigen(h: np.ndarray, s: np.ndarray) -> EigenDecomposition:
    """Solve h v = e s v for symmetric h and SPD s; vectors are s-orthonormal."""
    h = np.asarray(h, dtype=float)
    factor = cholesky_lower(s)
    reduced = _reduce_pencil(h, factor)
    reduced = 0.5 * (reduced + reduced.T)
    try:
        values, y = linalg.eigh(reduced)
    except linalg.LinAlgError as e:
        raise EigenSolverError(f"Symmetric eigensolver did not converge: {e}") from e
    vectors = linalg.solve_triangular(factor.T, y, lower=False)
    return EigenDecomposition(values=values, vectors=vectors)


def complex_dense_eigen(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense complex matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {m.shape}")
    try:
        values = linalg.eigvals(m)
    except linalg.LinAlgError as e:
        raise EigenSolverError(f"Complex eigensolver did not converge: {e}") from e
    if not np.all(np.isfinite(values)):
        raise EigenSolverError("Complex eigensolver returned non-finite eigenvalues")
    return values


def complex_generalized_eigen(h: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Eigenvalues of the pencil (h, s) with complex h and real SPD s."""
    factor = cholesky_lower(s)
    return complex_dense_eigen(_reduce_pencil(np.asarray(h, dtype=complex), factor))


def log_gamma_complex(z: complex) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise SingularPointError(f"log Gamma has a pole at z={z.real:g}")
    return complex(loggamma(z))


def hyp2f1_terminating(a: int, b: complex, c: complex, z: complex) -> complex:
    """2F1(a, b; c; z) for a nonpositive integer a, summed exactly."""
    if int(a) != a or a > 0:
        raise ValueError(f"a must be a nonpositive integer, got {a}")
    a = int(a)
    terms = -a
    for k in range(terms):
        ck = complex(c) + k
        if ck == 0:
            raise ValueError(f"c={c} hits a pole of the series before termination")

    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for k in range(terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def _muller_step(x0: complex, x1: complex, x2: complex, f0: complex, f1: complex, f2: complex) -> complex | None:
    """Next Muller iterate, or None when the interpolating parabola degenerates."""
    h1 = x1 - x0
    h2 = x2 - x1
    if h1 == 0 or h2 == 0 or (h1 + h2) == 0:
        return None
    d1 = (f1 - f0) / h1
    d2 = (f2 - f1) / h2
    a = (d2 - d1) / (h2 + h1)
    b = a * h2 + d2
    disc = cmath.sqrt(b * b - 4 * f2 * a)
    denom = b + disc if abs(b + disc) >= abs(b - disc) else b - disc
    if denom == 0:
        return None
    return x2 - 2 * f2 / denom


def muller_find_root(
    f: Callable[[complex], complex],
    seeds: Sequence[complex],
    tol: float = 1e-12,
    max_iter: int = 100,
) -> RootFindReport:
    """Muller iteration on f from three distinct seeds.

    A degenerate parabola perturbs the newest iterate once and retries; a
    second degeneracy ends the search with converged=False.
    """
    x0, x1, x2 = (complex(s) for s in seeds)
    if len({x0, x1, x2}) < 3:
        raise ValueError("Muller seeds must be distinct")

    f0, f1, f2 = f(x0), f(x1), f(x2)
    perturbed = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        if abs(f2) < tol:
            break
        x3 = _muller_step(x0, x1, x2, f0, f1, f2)
        if x3 is None or not cmath.isfinite(x3):
            if perturbed:
                logger.warning(f"Muller parabola degenerate twice near {x2}; giving up")
                break
            perturbed = True
            scale = abs(x2) if x2 != 0 else 1.0
            x2 = x2 + 1e-7 * scale * (1 + 1j)
            f2 = f(x2)
            continue
        step = abs(x3 - x2)
        x0, x1, x2 = x1, x2, x3
        f0, f1, f2 = f1, f2, f(x3)
        logger.debug(f"Muller iteration {iterations}: x={x2}, |f|={abs(f2):.3e}")
        if step <= 4 * np.finfo(float).eps * max(abs(x2), np.finfo(float).tiny):
            break

    residual = float(abs(f2))
    report = RootFindReport(root=x2, iterations=iterations, residual=residual, converged=residual < tol)
    if not report.converged:
        logger.warning(f"Muller did not converge: root~{x2}, |f|={residual:.3e}, iterations={iterations}")
    return report
