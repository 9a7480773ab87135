"""Finite Hamiltonian assembly, Harris spectra, resolvent corner and complex rotation.

The finite problem is the pencil (H - z Omega): the basis is not orthogonal,
and det Omega_{N-1} / det Omega_N = 1/(N + 2 ell + 1) is exactly the
prefactor of the product form of the resolvent corner.
"""
import cmath
import logging

import numpy as np
from scipy import linalg

from screening.config import get_settings
from screening.models.basis import BasisSpec
from screening.models.operators import HarrisSpectrum, OperatorSet
from screening.models.potential import PotentialModel
from screening.services.basis_service import build_overlap, quadrature_rule
from screening.services.potential_service import effective_potential
from screening.utils.exceptions import CapabilityError, HarrisPoleError
from screening.utils.kernels import complex_generalized_eigen, gen_sym_def_eigen

logger = logging.getLogger(__name__)


def kinetic_bands(spec: BasisSpec) -> tuple[np.ndarray, np.ndarray]:
    """Kinetic plus centrifugal part of H0: (lambda^2/8) times the Laguerre bands."""
    scale = spec.lam**2 / 8
    n = np.arange(spec.n_basis, dtype=float)
    diag = scale * (2 * n + spec.nu + 1)
    offdiag = scale * np.sqrt((n[:-1] + 1) * (n[:-1] + spec.nu + 1))
    return diag, offdiag


def build_h0(spec: BasisSpec, z_tilde: float, theta_rot: float = 0.0) -> np.ndarray:
    """Tridiagonal reference Hamiltonian; rotation scales kinetic by e^{-2i theta}, Coulomb by e^{-i theta}."""
    diag, offdiag = kinetic_bands(spec)
    kinetic = np.diag(diag) + np.diag(offdiag, 1) + np.diag(offdiag, -1)
    coulomb = z_tilde * spec.lam * np.eye(spec.n_basis)
    if theta_rot == 0.0:
        return kinetic + coulomb
    return cmath.exp(-2j * theta_rot) * kinetic + cmath.exp(-1j * theta_rot) * coulomb


def quadrature_matrix(spec: BasisSpec, integrand_values: np.ndarray) -> np.ndarray:
    """sum_k Lambda_nk Lambda_mk w_k for per-node values w_k."""
    rule = quadrature_rule(spec)
    return (rule.vectors * integrand_values) @ rule.vectors.T


def build_u_matrix(spec: BasisSpec, model: PotentialModel, theta_rot: float = 0.0) -> np.ndarray:
    """Gauss-quadrature matrix of U: sum_k Lambda_nk Lambda_mk node_k U(node_k e^{i theta}/lambda)."""
    if theta_rot != 0.0 and not model.analytic:
        raise CapabilityError(f"Envelope '{model.envelope.kind}' cannot be complex-rotated")
    nodes = quadrature_rule(spec).nodes
    radii = nodes / spec.lam
    if theta_rot != 0.0:
        radii = radii * cmath.exp(1j * theta_rot)
    u = quadrature_matrix(spec, nodes * effective_potential(model, radii))
    return 0.5 * (u + u.T)


def assemble_operators(spec: BasisSpec, model: PotentialModel, theta_rot: float = 0.0) -> OperatorSet:
    """Omega, H0, U for one (basis, potential, rotation) triple."""
    ops = OperatorSet(
        spec=spec,
        model=model,
        theta_rot=theta_rot,
        omega=build_overlap(spec),
        h0=build_h0(spec, model.z_tilde, theta_rot),
        u=build_u_matrix(spec, model, theta_rot),
    )
    logger.debug(
        f"Assembled operators: {model.name} A={model.strength} mu={model.mu} "
        f"ell={spec.ell} N={spec.n_basis} lambda={spec.lam} theta={theta_rot}"
    )
    return ops


def assemble_reference_operators(spec: BasisSpec, z_tilde: float = 0.0) -> OperatorSet:
    """Operators of the bare reference problem (U = 0)."""
    return OperatorSet(
        spec=spec,
        model=None,
        theta_rot=0.0,
        omega=build_overlap(spec),
        h0=build_h0(spec, z_tilde),
        u=np.zeros((spec.n_basis, spec.n_basis)),
    )


def harris_spectrum(ops: OperatorSet) -> HarrisSpectrum:
    """Generalized eigenvalues of (H, Omega) and of the leading (N-1) principal block."""
    if ops.rotated:
        raise ValueError("Harris spectrum is defined for the unrotated (real) operator set")
    h = ops.h
    omega = ops.omega.to_dense()
    full = gen_sym_def_eigen(h, omega)
    if ops.size > 1:
        trunc = gen_sym_def_eigen(h[:-1, :-1], omega[:-1, :-1]).values
    else:
        trunc = np.empty(0)
    return HarrisSpectrum(eps=full.values, eps_trunc=trunc, vectors=full.vectors)


def _check_pole(z: complex, eps: np.ndarray) -> None:
    guard = get_settings().harris_pole_guard
    gaps = np.abs(eps - z)
    n = int(np.argmin(gaps))
    if gaps[n] <= guard * max(1.0, abs(eps[n])):
        raise HarrisPoleError(z, float(eps[n]))


def green_corner_product(spec: BasisSpec, harris: HarrisSpectrum, z: complex) -> complex:
    """[(H - z Omega)^{-1}]_{N-1,N-1} from the Harris spectra, factors paired to avoid overflow."""
    _check_pole(z, harris.eps)
    value = 1.0 / ((spec.n_basis + spec.nu) * (harris.eps[-1] - z))
    for trunc, full in zip(harris.eps_trunc, harris.eps[:-1]):
        value *= (trunc - z) / (full - z)
    return complex(value)


def green_corner_direct(ops: OperatorSet, z: complex) -> complex:
    """Same corner element by a direct complex linear solve."""
    matrix = ops.h - z * ops.omega.to_dense()
    rhs = np.zeros(ops.size, dtype=complex)
    rhs[-1] = 1.0
    try:
        solution = linalg.solve(matrix.astype(complex), rhs)
    except linalg.LinAlgError as e:
        raise HarrisPoleError(z, float("nan")) from e
    return complex(solution[-1])


def green_corner(ops: OperatorSet, z: complex, harris: HarrisSpectrum | None = None) -> complex:
    """Resolvent corner g_{N-1,N-1}(z); product form when H is real, direct solve otherwise."""
    if ops.rotated:
        return green_corner_direct(ops, z)
    if harris is None:
        harris = harris_spectrum(ops)
    return green_corner_product(ops.spec, harris, z)


def rotated_spectrum(spec: BasisSpec, model: PotentialModel, theta_rot: float) -> np.ndarray:
    """Eigenvalues of (H(theta), Omega), sorted by real part."""
    if theta_rot == 0.0:
        return harris_spectrum(assemble_operators(spec, model)).eps.astype(complex)
    if not model.analytic:
        raise CapabilityError(f"Envelope '{model.envelope.kind}' cannot be complex-rotated")
    bound = model.envelope.max_rotation
    if not 0.0 < theta_rot < bound:
        raise ValueError(f"rotation angle must lie in (0, {bound:.4f}), got {theta_rot}")
    ops = assemble_operators(spec, model, theta_rot)
    values = complex_generalized_eigen(ops.h, ops.omega.to_dense())
    return values[np.lexsort((values.imag, values.real))]
