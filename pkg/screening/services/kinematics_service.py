"""Reference-problem asymptotics: kinematic map, closed-form free initials, recursions and continued fractions.

The reference solutions f_n obey, for n >= 1,

    D_n f_{n+1} = A_n f_n - B_n f_{n-1},
    A_n = 2[(n + ell + 1) cos(theta) - eta sin(theta)],
    B_n = sqrt(n (n + 2 ell + 1)),  D_n = sqrt((n + 1)(n + 2 ell + 2)).

The sine-like solution also satisfies the n = 0 row (B_0 = 0); the
cosine-like one does not. h^+- = c +- i s are the outgoing and incoming
combinations. Which of them is minimal flips with |e^{i theta}| vs 1.
"""
import cmath
import logging
import math

import numpy as np

from screening.config import get_settings
from screening.models.basis import BasisSpec
from screening.models.kinematics import KinematicChain, KinematicPoint, MinimalSolution, Sheet, Table1Initials
from screening.utils.exceptions import ConvergenceError, KinematicsModeError, SingularPointError
from screening.utils.kernels import hyp2f1_terminating, log_gamma_complex

logger = logging.getLogger(__name__)

_TINY = 1e-300
_RESCALE = 1e150


def kinematic_point(E: complex, spec: BasisSpec, z_tilde: float = 0.0, sheet: Sheet = "physical") -> KinematicPoint:
    """Map an energy to k, e^{i theta} = (k + i lambda/2)/(k - i lambda/2) and eta = Z/k."""
    E = complex(E)
    shifted = E + spec.lam**2 / 8
    if abs(shifted) <= 1e-15 * spec.lam**2:
        raise SingularPointError(f"E = -lambda^2/8 = {-spec.lam**2 / 8} is a singular point of the kinematic map")

    k = cmath.sqrt(2 * E)
    if sheet == "physical" and k.imag < 0:
        k = -k
    elif sheet == "second" and k.imag > 0:
        k = -k

    if k == 0:
        if z_tilde != 0:
            raise SingularPointError("Sommerfeld parameter diverges at k = 0")
        exp_i_theta = -1.0 + 0.0j
        eta = 0.0j
    else:
        exp_i_theta = (k + 0.5j * spec.lam) / (k - 0.5j * spec.lam)
        eta = z_tilde / k

    return KinematicPoint(
        energy=E,
        k=k,
        exp_i_theta=exp_i_theta,
        eta=complex(eta),
        coulomb_shift=complex(z_tilde * spec.lam / shifted),
        sheet=sheet,
        lam=spec.lam,
    )


def recursion_coeffs(n: int, point: KinematicPoint, spec: BasisSpec) -> tuple[complex, float, float]:
    """(A_n, B_n, D_n) of the row D_n f_{n+1} = A_n f_n - B_n f_{n-1}."""
    a_n = 2 * (n + spec.ell + 1) * point.cos_theta - point.coulomb_shift
    b_n = math.sqrt(n * (n + 2 * spec.ell + 1))
    d_n = math.sqrt((n + 1) * (n + 2 * spec.ell + 2))
    return a_n, b_n, d_n


def _coefficient_arrays(n_last: int, point: KinematicPoint, ell: int):
    n = np.arange(n_last + 1, dtype=float)
    a = 2 * (n + ell + 1) * point.cos_theta - point.coulomb_shift
    b = np.sqrt(n * (n + 2 * ell + 1))
    d = np.sqrt((n + 1) * (n + 2 * ell + 2))
    return a, b, d


def j_corner(E: complex, spec: BasisSpec) -> complex:
    """J_{N-1,N}(E) = (E + lambda^2/8) sqrt(N (N + 2 ell + 1))."""
    n = spec.n_basis
    return (complex(E) + spec.lam**2 / 8) * math.sqrt(n * (n + 2 * spec.ell + 1))


def table1_initials(point: KinematicPoint, ell: int, variant: str = "normalized") -> Table1Initials:
    """T_0 and R_1^+- of the free problem.

    ``printed`` evaluates the closed forms verbatim. ``normalized`` uses the
    argument e^{-+2i theta} in R_1 and the factor sqrt(2 ell + 2) that maps the
    coefficients onto the normalized basis; only this variant makes the free
    problem scatter nothing.
    """
    if not point.is_free:
        raise KinematicsModeError("Closed-form initials exist only for the free reference (eta = 0)")

    def f_low(w):
        return hyp2f1_terminating(-ell, 1, ell + 2, w)

    def f_high(w):
        return hyp2f1_terminating(-ell, 2, ell + 3, w)

    z = point.exp_i_theta
    z2 = z * z
    t0 = z2 * f_low(z2) / f_low(1 / z2)

    if variant == "printed":
        r1_plus = (1 / z) * f_high(1 / z) / f_low(1 / z) / (ell + 2)
        r1_minus = z * f_high(z) / f_low(z) / (ell + 2)
    elif variant == "normalized":
        scale = math.sqrt(2 * ell + 2) / (ell + 2)
        r1_plus = scale * (1 / z) * f_high(1 / z2) / f_low(1 / z2)
        r1_minus = scale * z * f_high(z2) / f_low(z2)
    else:
        raise ValueError(f"Unknown closed-form variant '{variant}'")
    return Table1Initials(t0=complex(t0), r1_plus=complex(r1_plus), r1_minus=complex(r1_minus))


def forward_ratios(point: KinematicPoint, spec: BasisSpec, r1: complex, n_last: int) -> np.ndarray:
    """Ratios r_n = f_n/f_{n-1}, n = 1..n_last, by forward recursion from r_1."""
    a, b, d = _coefficient_arrays(n_last, point, spec.ell)
    ratios = np.empty(n_last, dtype=complex)
    ratios[0] = r1
    for n in range(1, n_last):
        prev = ratios[n - 1]
        if prev == 0:
            raise SingularPointError(f"Reference solution vanishes at n={n - 1}")
        ratios[n] = (a[n] - b[n] / prev) / d[n]
    return ratios


def _backward_ratios(point: KinematicPoint, ell: int, depth: int) -> np.ndarray:
    """rho_n = m_{n+1}/m_n for n = 0..depth-1 by the backward continued fraction."""
    a, b, d = _coefficient_arrays(depth, point, ell)
    z = point.exp_i_theta
    rho = z if abs(z) < 1 else 1 / z
    ratios = np.empty(depth, dtype=complex)
    for n in range(depth, 0, -1):
        denom = a[n] - d[n] * rho
        if denom == 0:
            denom = _TINY
        rho = b[n] / denom
        ratios[n - 1] = rho
    return ratios


def minimal_solution(point: KinematicPoint, spec: BasisSpec, n_needed: int) -> MinimalSolution:
    """Minimal solution m_0..m_{n_needed} (m_0 = 1) by an adaptively deepened continued fraction."""
    settings = get_settings()
    modulus = abs(point.exp_i_theta)
    if abs(modulus - 1.0) < 1e-12:
        raise SingularPointError(
            "Minimal solution is undefined on the positive real energy axis; use the forward route"
        )

    decay = abs(math.log(modulus))
    depth = max(settings.cf_initial_depth, n_needed + 2 + int(math.ceil(-math.log(settings.cf_tol) / decay)))
    previous = _backward_ratios(point, spec.ell, depth)[:n_needed]
    while True:
        depth *= 2
        if depth > settings.cf_max_depth:
            raise ConvergenceError(
                f"Continued fraction not tail-stable within depth {settings.cf_max_depth} at E={point.energy}"
            )
        current = _backward_ratios(point, spec.ell, depth)[:n_needed]
        scale = np.maximum(np.abs(current), _TINY)
        if n_needed == 0 or np.max(np.abs(current - previous) / scale) < settings.cf_tol:
            break
        previous = current

    values = np.concatenate(([1.0 + 0.0j], np.cumprod(current)))
    tail = complex(current[-1]) if n_needed else 0j
    logger.debug(f"Minimal solution at E={point.energy}: depth={depth}, tail ratio={tail}")
    return MinimalSolution(values=values, ratios=current, tail_ratio=tail, depth=depth)


def regular_solution(point: KinematicPoint, spec: BasisSpec, n_max: int) -> np.ndarray:
    """Sine-like coefficients s_0..s_{n_max} (s_0 = 1), seeded by the homogeneous n = 0 row."""
    values, log_scale = scaled_regular_solution(point, spec, n_max)
    return values * math.exp(log_scale)


def scaled_regular_solution(point: KinematicPoint, spec: BasisSpec, n_max: int) -> tuple[np.ndarray, float]:
    """Regular solution s_n = values_n e^{log_scale}, renormalized on the fly so growth cannot overflow."""
    a, b, d = _coefficient_arrays(n_max, point, spec.ell)
    values = np.empty(n_max + 1, dtype=complex)
    values[0] = 1.0
    log_scale = 0.0
    if n_max >= 1:
        values[1] = a[0] / d[0]
    for n in range(1, n_max):
        values[n + 1] = (a[n] * values[n] - b[n] * values[n - 1]) / d[n]
        size = abs(values[n + 1])
        if size > _RESCALE:
            values[: n + 2] /= size
            log_scale += math.log(size)
    return values, log_scale


def _needs_continued_fraction(point: KinematicPoint, n_last: int) -> bool:
    # forward recursion of the minimal member loses about |z|^{2N}; tolerate up to e^2
    return n_last * abs(math.log(abs(point.exp_i_theta))) > 1.0


def propagate_chain(initials: Table1Initials, point: KinematicPoint, spec: BasisSpec) -> KinematicChain:
    """R_N^+- and the products P^+- from T_0, R_1^+-; the minimal member comes from the continued fraction."""
    n_last = spec.n_basis
    plus = forward_ratios(point, spec, initials.r1_plus, n_last)
    minus = forward_ratios(point, spec, initials.r1_minus, n_last)

    if _needs_continued_fraction(point, n_last):
        minimal = minimal_solution(point, spec, n_last).ratios
        if abs(point.exp_i_theta) > 1:
            plus = minimal
        else:
            minus = minimal

    log_p_plus = complex(np.sum(np.log(plus[: n_last - 1])))
    log_p_minus = complex(np.sum(np.log(minus[: n_last - 1])))
    return KinematicChain(
        t0=initials.t0,
        r_plus=complex(plus[n_last - 1]),
        r_minus=complex(minus[n_last - 1]),
        log_p_plus=log_p_plus,
        log_p_minus=log_p_minus,
        j_corner=j_corner(point.energy, spec),
    )


def outgoing_ratio(point: KinematicPoint, spec: BasisSpec, variant: str = "normalized") -> complex:
    """R_N^+ alone: continued fraction where h^+ is minimal, forward recursion otherwise."""
    n_last = spec.n_basis
    if abs(point.exp_i_theta) > 1 and _needs_continued_fraction(point, n_last):
        return complex(minimal_solution(point, spec, n_last).ratios[-1])
    if not point.is_free:
        raise KinematicsModeError("Outgoing ratio off the physical sheet needs closed-form free initials")
    r1 = table1_initials(point, spec.ell, variant).r1_plus
    return complex(forward_ratios(point, spec, r1, n_last)[-1])


def coulomb_reference_smatrix(point: KinematicPoint, ell: int) -> complex:
    """S_C = Gamma(ell + 1 + i eta)/Gamma(ell + 1 - i eta); infinite at a reference bound state."""
    if point.k == 0:
        raise SingularPointError("Coulomb reference S-matrix is undefined at k = 0")
    numerator_arg = ell + 1 + 1j * point.eta
    denominator_arg = ell + 1 - 1j * point.eta
    for arg in (numerator_arg, denominator_arg):
        nearest = round(arg.real)
        if abs(arg.imag) < 1e-12 and nearest <= 0 and abs(arg.real - nearest) < 1e-12:
            if arg is numerator_arg:
                logger.debug(f"Coulomb S-matrix pole at E={point.energy}")
                return complex(math.inf, 0.0)
            return 0j
    return cmath.exp(log_gamma_complex(numerator_arg) - log_gamma_complex(denominator_arg))
