"""S-matrix assembly, pole conditions and bound-state / resonance searches."""
import cmath
import logging
import math
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from scipy import linalg, optimize

from screening.config import KINEMATICS_MODES, get_settings
from screening.models.basis import BasisSpec
from screening.models.kernels import RootFindReport
from screening.models.kinematics import KinematicPoint, Sheet
from screening.models.operators import OperatorSet
from screening.models.potential import PotentialModel
from screening.models.results import PoleResult, sort_poles
from screening.services.hamiltonian_service import (
    assemble_operators,
    assemble_reference_operators,
    build_h0,
    green_corner,
    harris_spectrum,
    rotated_spectrum,
)
from screening.services.kinematics_service import (
    forward_ratios,
    j_corner,
    kinematic_point,
    minimal_solution,
    outgoing_ratio,
    propagate_chain,
    scaled_regular_solution,
    table1_initials,
)
from screening.utils.exceptions import CapabilityError, ConvergenceError, KinematicsModeError, SingularPointError
from screening.utils.kernels import muller_find_root

logger = logging.getLogger(__name__)

# Rotated eigenvalues with arg E below -(1 - margin) 2 theta belong to the rotated continuum
_CONTINUUM_MARGIN = 0.25
# Relative distance under which eigenvalues at neighbouring angles belong to one trajectory
_TRACK_TOLERANCE = 1e-2
_MAX_DIGITS = 15
# Rotation plateaus flatter than this count as converged
_PLATEAU_SPREAD = 1e-6
_MAX_BRACKET_STEPS = 200
_LOG_HUGE = 700.0


def stable_digits(relative_change: float) -> int:
    """Digits that did not move: floor(-log10(change)), capped at double precision."""
    if relative_change <= 0 or not math.isfinite(relative_change):
        return _MAX_DIGITS if relative_change == 0 else 0
    return int(min(_MAX_DIGITS, max(0, math.floor(-math.log10(relative_change)))))


def default_theta_grid(model: PotentialModel, count: int = 15) -> tuple[float, ...]:
    upper = min(0.75, 0.95 * model.envelope.max_rotation)
    return tuple(float(t) for t in np.linspace(0.05, upper, count))


class SpectralEngine:
    """All pole machinery for one unrotated operator set.

    In ``table1-free`` mode the outer region is free (eta = 0) and the whole
    potential sits in the finite block; in ``coulomb`` mode the outer region
    carries the effective charge Z - A exactly.
    """

    def __init__(
        self,
        ops: OperatorSet,
        mode: Optional[str] = None,
        variant: Optional[str] = None,
        z_tilde: Optional[float] = None,
    ):
        if ops.rotated:
            raise ValueError("SpectralEngine needs the unrotated operator set")
        self.settings = get_settings()
        self.mode = mode or self.settings.default_mode
        if self.mode not in KINEMATICS_MODES:
            raise KinematicsModeError(f"Unknown kinematics mode '{self.mode}'. Use one of {KINEMATICS_MODES}.")
        self.variant = variant or self.settings.table1_variant
        self.ops = ops
        self.spec = ops.spec
        self.model = ops.model
        if z_tilde is None:
            z_tilde = ops.model.z_tilde if ops.model is not None else 0.0
        self.z_tilde = z_tilde
        self.harris = harris_spectrum(ops)
        logger.info(
            f"Engine ready: {self.label} ell={self.spec.ell} N={self.spec.n_basis} "
            f"lambda={self.spec.lam} mode={self.mode}, lowest Harris level {self.harris.eps[0]:.10g}"
        )

    @classmethod
    def build(
        cls, spec: BasisSpec, model: PotentialModel, mode: Optional[str] = None, variant: Optional[str] = None
    ) -> "SpectralEngine":
        return cls(assemble_operators(spec, model), mode=mode, variant=variant)

    @classmethod
    def reference(
        cls, spec: BasisSpec, z_tilde: float = 0.0, mode: Optional[str] = None, variant: Optional[str] = None
    ) -> "SpectralEngine":
        """Engine for the bare reference problem (U = 0)."""
        return cls(assemble_reference_operators(spec, z_tilde), mode=mode, variant=variant, z_tilde=z_tilde)

    def rescaled(self, spec: BasisSpec) -> "SpectralEngine":
        """Same problem in another basis."""
        if self.model is None:
            return SpectralEngine.reference(spec, self.z_tilde, self.mode, self.variant)
        return SpectralEngine.build(spec, self.model, self.mode, self.variant)

    @property
    def label(self) -> str:
        return "reference" if self.model is None else self.model.name

    @property
    def outer_charge(self) -> float:
        return 0.0 if self.mode == "table1-free" else self.z_tilde

    def point(self, E: complex, sheet: Sheet = "physical") -> KinematicPoint:
        return kinematic_point(E, self.spec, self.outer_charge, sheet)

    def corner(self, E: complex) -> complex:
        return green_corner(self.ops, E, self.harris)

    def inverse_corner(self, E: complex, skip: Optional[int] = None) -> complex:
        """1/g_{N-1,N-1}(E); finite at Harris eigenvalues, infinite at those of the leading block.

        With ``skip`` the pole at leading-block eigenvalue ``skip`` is divided
        out, which gives (eps~_skip - E)/g, smooth across that eigenvalue.
        """
        value = (self.spec.n_basis + self.spec.nu) * (self.harris.eps[-1] - E)
        for i, (trunc, full) in enumerate(zip(self.harris.eps_trunc, self.harris.eps[:-1])):
            value *= (full - E) if i == skip else (full - E) / (trunc - E)
        return value

    @cached_property
    def free_perturbation(self) -> np.ndarray:
        """W = H - H_free: everything the free reference leaves out, Coulomb term included."""
        return self.ops.h - build_h0(self.spec, 0.0)

    def _free_response(self, E: complex, point: KinematicPoint) -> tuple[complex, float]:
        """[(H - E Omega)^{-1} W s]_{N-1} for the regular solution s, as (value, log scale)."""
        regular, log_scale = scaled_regular_solution(point, self.spec, self.spec.n_basis - 1)
        source = self.free_perturbation @ regular
        if not np.any(source):
            return 0j, log_scale
        matrix = self.ops.h - E * self.ops.omega.to_dense()
        response = linalg.solve(matrix.astype(complex), source)
        return complex(response[-1]), log_scale

    def smatrix(self, E: complex, sheet: Sheet = "physical") -> complex:
        """S = T_{N-1} (1 + g J R^-)/(1 + g J R^+).

        Evaluated through the equivalent S = 1 - (1 - T_0) x_{N-1} / (P^+ (1 + g J R_N^+)),
        with x = (H - E Omega)^{-1} W s and P^+ = h^+_{N-1}/h^+_0. Inside the
        unit circle of e^{i theta} the mirror identity with h^- gives 1/S.
        Neither form builds T_{N-1}, and U = 0 gives S = 1 exactly.
        """
        if self.mode != "table1-free":
            raise KinematicsModeError("Full S-matrix assembly needs the closed-form free initials (table1-free mode)")
        point = self.point(E, sheet)
        chain = propagate_chain(table1_initials(point, self.spec.ell, self.variant), point, self.spec)
        gj = self.corner(E) * chain.j_corner
        response, log_scale = self._free_response(E, point)
        outgoing = abs(point.exp_i_theta) >= 1
        if outgoing:
            t0, log_p, closure = chain.t0, chain.log_p_plus, 1 + gj * chain.r_plus
        else:
            t0, log_p, closure = 1 / chain.t0, chain.log_p_minus, 1 + gj * chain.r_minus
        if response == 0:
            return 1 + 0j
        if closure == 0:
            return complex(math.inf, 0.0) if outgoing else 0j
        log_q = cmath.log(response) + log_scale - log_p - cmath.log(closure)
        if log_q.real > _LOG_HUGE:
            logger.debug(f"|S| overflows at E={E} ({sheet} sheet)")
            return complex(math.inf, 0.0) if outgoing else 0j
        value = 1 - (1 - t0) * cmath.exp(log_q)
        return value if outgoing else 1 / value

    def denominator(self, E: complex, sheet: Sheet = "physical") -> complex:
        """1 + g J R_N^+, whose zeros are the S-matrix poles."""
        point = self.point(E, sheet)
        return 1 + self.corner(E) * j_corner(E, self.spec) * outgoing_ratio(point, self.spec, self.variant)

    def _decaying_ratios(self, E: float) -> np.ndarray:
        """rho_n = m_{n+1}/m_n, n = 0..N-1, of the solution that decays for E < 0."""
        point = self.point(E, "physical")
        n_last = self.spec.n_basis
        if self.mode == "table1-free" and n_last * abs(math.log(abs(point.exp_i_theta))) <= 1.0:
            r1 = table1_initials(point, self.spec.ell, self.variant).r1_plus
            return forward_ratios(point, self.spec, r1, n_last)
        return minimal_solution(point, self.spec, n_last).ratios

    def bound_condition(self, E: float) -> float:
        """D(E) = m_{N-1} + g J m_N; its zeros are the bound-state energies."""
        ratios = self._decaying_ratios(E)
        m_prev = np.prod(ratios[:-1])
        value = m_prev * (1 + self.corner(E) * j_corner(E, self.spec) * ratios[-1])
        return float(np.real(value))

    def window_function(self, E: float, pair: Optional[int] = None) -> float:
        """Phi(E) = 1/g + J rho_{N-1}; falls from +inf to -inf between leading-block eigenvalues.

        With ``pair`` this is (eps~_pair - E) Phi(E), which is finite and
        negative at eps~_pair.
        """
        try:
            ratio = self._decaying_ratios(E)[-1]
        except SingularPointError:
            E = E * (1 + 1e-12)
            ratio = self._decaying_ratios(E)[-1]
        weight = 1.0 if pair is None else self.harris.eps_trunc[pair] - E
        return float(np.real(self.inverse_corner(E, skip=pair) + weight * j_corner(E, self.spec) * ratio))

    def search_ceiling(self) -> float:
        """Highest energy the bound search evaluates.

        In coulomb mode this is also capped where the continued fraction still
        converges within ``cf_max_depth``: its depth grows like 1/log|e^{i theta}|.
        """
        ceiling = self.settings.bound_energy_ceiling
        if self.mode == "table1-free":
            return ceiling
        budget = max(1.0, self.settings.cf_max_depth / 4 - self.spec.n_basis - 2)
        decay = -math.log(self.settings.cf_tol) / budget
        kappa = 0.5 * self.spec.lam * math.tanh(decay / 2)
        return min(ceiling, -0.5 * kappa**2)

    def _default_floor(self) -> float:
        floor = self.harris.eps[0] - max(1.0, abs(self.harris.eps[0]))
        for _ in range(20):
            if self.window_function(floor) > 0:
                return floor
            floor *= 2
        return floor

    @staticmethod
    def _bound_pole(energy: float, iterations: int = 0, residual: float = 0.0, converged: bool = True) -> PoleResult:
        report = RootFindReport(root=complex(energy), iterations=iterations, residual=residual, converged=converged)
        return PoleResult(energy=complex(energy), kind="bound", seed="harris", report=report)

    def _step_below(self, f, start: float, gap: float, lo: float, lo_is_pole: bool) -> Optional[float]:
        """A point below ``start`` where f > 0: geometric steps, then halving toward a pole at lo."""
        step = max(gap, 16 * np.finfo(float).eps * abs(start))
        last = start
        for _ in range(_MAX_BRACKET_STEPS):
            trial = start - step
            if trial <= lo:
                if not lo_is_pole:
                    return lo if f(lo) > 0 else None
                trial = 0.5 * (lo + last)
                if not lo < trial < last:
                    return None
            if f(trial) > 0:
                return trial
            last = trial
            step *= 4
        return None

    def _solve_pair(self, j: int, lo: float, hi: float, lo_is_pole: bool, hi_is_pole: bool) -> Optional[PoleResult]:
        """Root of Phi in the window (lo, hi) around Harris eigenvalue eps_j.

        When hi is the leading-block eigenvalue eps~_j its pole is divided out,
        so the bracket reaches it however close eps_j and eps~_j are.
        """
        anchor = float(self.harris.eps[j])
        if hi_is_pole and hi <= anchor:
            # eps_j and eps~_j coincide in double precision
            return self._bound_pole(anchor) if anchor < 0 else None
        pair = j if hi_is_pole else None

        def f(E: float) -> float:
            return self.window_function(E, pair)

        f_hi = f(hi)
        if f_hi > 0:
            return None
        if f_hi == 0:
            return self._bound_pole(hi)
        start = anchor if lo < anchor < hi else hi
        f_start = f_hi if start == hi else f(start)
        if f_start == 0:
            return self._bound_pole(start)
        if f_start > 0:
            a, b = start, hi
        else:
            a = self._step_below(f, start, hi - start if start < hi else abs(hi), lo, lo_is_pole)
            if a is None:
                return None
            b = start
        xtol = max(self.settings.brent_xtol * abs(b), np.finfo(float).tiny)
        root, info = optimize.brentq(f, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps, full_output=True)
        return self._bound_pole(root, info.iterations, abs(f(root)), info.converged)

    def find_bound_states(
        self, window: Optional[tuple[float, float]] = None, retry_near_zero: bool = True
    ) -> list[PoleResult]:
        """Every bound state in the window, one per Harris eigenvalue window of Phi, sorted ascending."""
        ceiling = self.search_ceiling()
        if window is None:
            lo, hi = self._default_floor(), ceiling
        else:
            lo, hi = window[0], min(window[1], ceiling)
            if lo >= 0:
                raise ValueError("bound-state window must start below zero")
        if lo >= hi:
            return []

        eps, trunc = self.harris.eps, self.harris.eps_trunc
        poles = []
        for j in range(eps.size):
            lower = float(trunc[j - 1]) if j > 0 else -math.inf
            upper = float(trunc[j]) if j < trunc.size else math.inf
            if upper <= lo:
                continue
            if lower >= hi:
                break
            a, b = max(lower, lo), min(upper, hi)
            try:
                pole = self._solve_pair(j, a, b, lo_is_pole=lower >= lo, hi_is_pole=upper <= hi)
            except ConvergenceError as e:
                logger.warning(f"Skipping window ({a:.6g}, {b:.6g}): {e}")
                continue
            if pole is not None:
                poles.append(pole)
        poles = self._dedupe(poles)

        threshold = self.settings.near_zero_energy
        if retry_near_zero and any(abs(p.energy) < threshold for p in poles):
            poles = self._retry_near_zero(poles, threshold)

        logger.info(f"{self.label}: {len(poles)} bound state(s) in ({lo:.6g}, {hi:.3g})")
        return sort_poles(poles)

    def _retry_near_zero(self, poles: list[PoleResult], threshold: float) -> list[PoleResult]:
        wide = self.rescaled(self.spec.with_size(2 * self.spec.n_basis).with_scale(self.spec.lam / 2))
        logger.info(f"Near-threshold level found; retrying with N={wide.spec.n_basis} lambda={wide.spec.lam}")
        cut = -10 * threshold
        refined = wide.find_bound_states(window=(cut, 0.0), retry_near_zero=False)
        kept = [p for p in poles if p.energy.real <= cut]
        return self._dedupe(kept + refined)

    @staticmethod
    def _dedupe(poles: list[PoleResult], tolerance: float = 1e-10) -> list[PoleResult]:
        unique: list[PoleResult] = []
        for pole in sort_poles(poles):
            if any(abs(pole.energy - u.energy) <= tolerance * max(abs(u.energy), 1e-300) for u in unique):
                continue
            unique.append(pole)
        return unique

    def rotation_seeds(self, theta_grid: Sequence[float]) -> list[tuple[complex, float]]:
        """Rotated eigenvalues that stay put across the angle grid: (energy, relative spread)."""
        if self.model is None or not self.model.analytic:
            raise CapabilityError("Complex rotation needs an analytic envelope")
        grid = sorted(theta_grid)
        candidates = []
        for theta in grid:
            values = rotated_spectrum(self.spec, self.model, theta)
            keep = [
                complex(v) for v in values
                if v.real > 0 and v.imag < 0 and np.angle(v) > -(1 - _CONTINUUM_MARGIN) * 2 * theta
            ]
            candidates.append(keep)

        tracks: list[list[complex]] = [[c] for c in candidates[0]] if candidates else []
        for step in range(1, len(candidates)):
            current = candidates[step]
            extended = []
            for track in tracks:
                last = track[-1]
                if current:
                    nearest = min(current, key=lambda c: abs(c - last))
                    if abs(nearest - last) <= _TRACK_TOLERANCE * abs(last):
                        extended.append(track + [nearest])
                        continue
                if len(track) >= 2:
                    extended.append(track)
            taken = {t[-1] for t in extended}
            extended.extend([c] for c in current if c not in taken)
            tracks = extended

        seeds = []
        for track in tracks:
            if len(track) < 2:
                continue
            changes = [abs(b - a) / abs(b) for a, b in zip(track, track[1:])]
            best = int(np.argmin(changes))
            seeds.append((track[best + 1], changes[best]))
        seeds = self._dedupe_seeds(seeds)
        logger.info(f"{self.label}: {len(seeds)} rotation seed(s) over {len(grid)} angles")
        return seeds

    @staticmethod
    def _dedupe_seeds(seeds: list[tuple[complex, float]]) -> list[tuple[complex, float]]:
        unique: list[tuple[complex, float]] = []
        for energy, spread in sorted(seeds, key=lambda s: s[1]):
            if all(abs(energy - u) > _TRACK_TOLERANCE * abs(u) for u, _ in unique):
                unique.append((energy, spread))
        return unique

    def refine_pole(self, seed: complex, sheet: Sheet = "second") -> RootFindReport:
        """Muller on the S-matrix denominator from three points around the seed."""
        seed = complex(seed)
        step = 1e-4 * abs(seed)
        seeds = (seed, seed + step, seed - 1j * step)
        return muller_find_root(
            lambda e: self.denominator(e, sheet), seeds,
            tol=self.settings.muller_tol, max_iter=self.settings.muller_max_iter,
        )

    def find_resonances(
        self, theta_grid: Optional[Sequence[float]] = None, seeds: Sequence[complex] = ()
    ) -> list[PoleResult]:
        """Fourth-quadrant poles seeded by complex rotation and/or by the caller."""
        if self.model is None and not seeds:
            return []
        pending: list[tuple[complex, float | None, str]] = []
        if self.model is not None and self.model.analytic:
            grid = theta_grid if theta_grid is not None else default_theta_grid(self.model)
            pending.extend((e, spread, "rotation") for e, spread in self.rotation_seeds(grid))
        elif not seeds:
            raise CapabilityError(
                f"Envelope '{self.model.envelope.kind}' cannot be rotated; supply resonance seeds instead"
            )
        pending.extend((complex(s), None, "user") for s in seeds)

        poles = []
        for energy, spread, provenance in pending:
            pole = self._resolve_seed(energy, spread, provenance)
            if pole is not None:
                poles.append(pole)
        poles = self._dedupe(poles, tolerance=1e-8)
        logger.info(f"{self.label}: {len(poles)} resonance(s)")
        return sort_poles(poles)

    @staticmethod
    def _plateau_pole(energy: complex, spread: float, provenance: str) -> PoleResult:
        report = RootFindReport(
            root=energy, iterations=0, residual=spread * abs(energy), converged=spread < _PLATEAU_SPREAD
        )
        return PoleResult(
            energy=energy, kind="resonance", seed=provenance, report=report, digits_stable=stable_digits(spread)
        )

    def _resolve_seed(self, energy: complex, spread: float | None, provenance: str) -> Optional[PoleResult]:
        """Refine one seed on the second sheet; a rotation seed bounds how far the refined root may move."""
        if self.mode == "coulomb":
            if spread is None:
                raise KinematicsModeError("Coulomb-mode resonances come from rotation plateaus; seeds cannot be refined")
            return self._plateau_pole(energy, spread, provenance)

        try:
            report = self.refine_pole(energy, "second")
        except (SingularPointError, ConvergenceError) as e:
            logger.warning(f"Refinement from {energy} failed: {e}")
            report = RootFindReport(root=energy, iterations=0, residual=math.inf, converged=False)

        root = report.root
        if spread is not None and abs(root - energy) > _TRACK_TOLERANCE * abs(energy):
            logger.warning(f"Root {root} left the rotation plateau at {energy}; keeping the plateau energy")
            return self._plateau_pole(energy, spread, provenance)
        if not (root.real > 0 and root.imag < 0):
            logger.debug(f"Root {root} from seed {energy} left the resonance quadrant")
            if not (energy.real > 0 and energy.imag < 0):
                return None
            report = RootFindReport(root=energy, iterations=report.iterations, residual=report.residual, converged=False)
            root = energy
        digits = None
        if spread is not None and report.converged:
            digits = stable_digits(abs(root - energy) / abs(root)) if root != energy else _MAX_DIGITS
        return PoleResult(energy=root, kind="resonance", seed=provenance, report=report, digits_stable=digits)
