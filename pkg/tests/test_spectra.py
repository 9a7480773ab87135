"""Tests for S-matrix assembly and the bound-state / resonance searches."""
import numpy as np
import pytest

from screening.models.basis import BasisSpec
from screening.models.kernels import RootFindReport
from screening.models.results import PoleResult, sort_poles
from screening.services.hamiltonian_service import green_corner_direct
from screening.services.potential_service import hulthen_s_wave_energy, make_potential, scale_transform
from screening.services.spectra_service import SpectralEngine, default_theta_grid, stable_digits
from screening.utils.exceptions import CapabilityError, KinematicsModeError


def _report(energy):
    return RootFindReport(root=complex(energy), iterations=1, residual=0.0, converged=True)


@pytest.fixture
def hulthen_engine(hulthen, s_wave_basis):
    """Table-mode engine for the s-wave Hulthen problem at mu = 0.21."""
    return SpectralEngine.build(s_wave_basis, hulthen, mode="table1-free")


@pytest.fixture
def yukawa_engine(yukawa):
    """Yukawa engine used for the analytic S-matrix checks."""
    return SpectralEngine.build(BasisSpec(ell=0, lam=1.0, n_basis=30), yukawa, mode="table1-free")


class TestFreeProblem:
    """Tests for the potential-free reference problem."""

    @pytest.mark.parametrize("ell,n_basis", [(0, 10), (1, 50), (2, 30)])
    def test_scatters_nothing(self, ell, n_basis):
        """With U = 0 and no charge, S = 1 on a grid of complex energies on both sides of threshold."""
        engine = SpectralEngine.reference(BasisSpec(ell=ell, lam=1.0, n_basis=n_basis), 0.0, mode="table1-free")
        for re_part in (-0.9, -0.3, 0.2, 0.8, 1.5):
            for im_part in (-0.4, -0.1, 0.1, 0.4):
                assert abs(engine.smatrix(complex(re_part, im_part)) - 1) < 1e-10

    def test_no_bound_states(self):
        """The free problem has no negative-energy poles."""
        engine = SpectralEngine.reference(BasisSpec(ell=0, lam=1.0, n_basis=10), 0.0, mode="table1-free")
        assert engine.find_bound_states(window=(-10.0, -1e-6)) == []

    def test_no_resonances_without_seeds(self):
        """Nothing to rotate and nothing seeded: no resonances."""
        engine = SpectralEngine.reference(BasisSpec(ell=0, lam=1.0, n_basis=10), 0.0)
        assert engine.find_resonances() == []


class TestHydrogenGate:
    """Tests for the pure Coulomb reference."""

    def test_ground_state_zero_of_bound_condition(self):
        """D(-1/2) vanishes for U = 0, Z = -1, lambda = 1."""
        engine = SpectralEngine.reference(BasisSpec(ell=0, lam=1.0, n_basis=5), -1.0, mode="coulomb")
        assert abs(engine.bound_condition(-0.5)) < 1e-10

    def test_smatrix_needs_table_mode(self):
        """Full S-matrix assembly is only available with the free closed forms."""
        engine = SpectralEngine.reference(BasisSpec(ell=0, lam=1.0, n_basis=5), -1.0, mode="coulomb")
        with pytest.raises(KinematicsModeError):
            engine.smatrix(0.3 + 0.1j)

    def test_unknown_mode(self):
        """Modes are validated."""
        with pytest.raises(KinematicsModeError):
            SpectralEngine.reference(BasisSpec(ell=0, lam=1.0, n_basis=5), -1.0, mode="relativistic")


class TestSMatrixSymmetries:
    """Tests for unitarity and reflection symmetry of S."""

    def test_unitary_on_real_axis(self, yukawa_engine):
        """|S(E)| = 1 for real E > 0."""
        for energy in np.linspace(0.01, 2.0, 20):
            assert abs(abs(yukawa_engine.smatrix(energy)) - 1) < 1e-8

    @pytest.mark.parametrize("energy", [0.3 + 0.2j, 1.1 - 0.4j, -0.2 + 0.3j])
    def test_reflection(self, yukawa_engine, energy):
        """S(E) conj(S(conj E on the second sheet)) = 1."""
        physical = yukawa_engine.smatrix(energy)
        mirrored = yukawa_engine.smatrix(np.conj(energy), sheet="second")
        assert abs(physical * np.conj(mirrored) - 1) < 1e-8

    @pytest.mark.parametrize("energy", [-0.9 + 0.3j, -0.3 + 0.05j, 0.8 + 0.6j])
    def test_reflection_in_wide_basis(self, yukawa, energy):
        """S stays finite and reflection-symmetric with N = 50 where e^{i theta} is far from the unit circle."""
        engine = SpectralEngine.build(BasisSpec(ell=1, lam=1.0, n_basis=50), yukawa, mode="table1-free")
        physical = engine.smatrix(energy)
        mirrored = engine.smatrix(np.conj(energy), sheet="second")
        assert np.isfinite(physical)
        assert abs(physical * np.conj(mirrored) - 1) < 1e-6


class TestBoundStates:
    """Tests for the bound-state search."""

    def test_hulthen_levels(self, hulthen_engine):
        """Three s levels at mu = 0.21; 1s and 2s match the closed form to six digits."""
        states = hulthen_engine.find_bound_states()
        assert len(states) == 3
        assert all(p.kind == "bound" and p.converged for p in states)
        for n, pole in zip((1, 2), states):
            assert pole.energy.real == pytest.approx(hulthen_s_wave_energy(n, 1.0, 0.21), rel=5e-6)
        assert states[2].energy.real == pytest.approx(hulthen_s_wave_energy(3, 1.0, 0.21), rel=2e-3)

    def test_sorted_and_negative(self, hulthen_engine):
        """Levels come back ascending and strictly negative."""
        energies = [p.energy.real for p in hulthen_engine.find_bound_states()]
        assert energies == sorted(energies)
        assert all(e < 0 for e in energies)

    def test_deep_levels_sit_near_harris_eigenvalues(self, hulthen):
        """Well-bound poles agree with the finite-basis eigenvalues in a large basis."""
        engine = SpectralEngine.build(BasisSpec(ell=0, lam=0.8, n_basis=100), hulthen)
        eps = engine.harris.eps
        for pole in engine.find_bound_states():
            if pole.energy.real > -0.01:
                continue
            nearest = eps[np.argmin(np.abs(eps - pole.energy.real))]
            assert abs(nearest - pole.energy.real) <= 1e-4 * abs(pole.energy.real)

    def test_corner_matches_direct_resolvent(self, hulthen_engine):
        """The engine corner agrees with solving (H - E Omega) directly off the real axis."""
        z = complex(-0.1, 0.05)
        direct = green_corner_direct(hulthen_engine.ops, z)
        assert hulthen_engine.corner(z) == pytest.approx(direct, rel=1e-9)

    def test_denominator_vanishes_at_bound_state(self, hulthen_engine):
        """The shallow 3s is a zero of 1 + g J R^+ on the physical sheet."""
        pole = hulthen_engine.find_bound_states()[-1]
        assert abs(hulthen_engine.denominator(pole.energy.real)) < 1e-8

    def test_muller_agrees_with_bracketing(self, hulthen_engine):
        """Complex root finding from a nearby seed lands on the bracketed 3s."""
        pole = hulthen_engine.find_bound_states()[-1]
        report = hulthen_engine.refine_pole(pole.energy.real * (1 + 1e-6), sheet="physical")
        assert report.root.real == pytest.approx(pole.energy.real, rel=1e-9)
        assert abs(report.root.imag) < 1e-9

    @pytest.mark.parametrize(
        "ell,mu,expected",
        [(1, 0.18, -4.864123176038e-2), (3, 0.05, -1.0061964550933e-2)],
    )
    def test_lowest_level_of_higher_waves(self, ell, mu, expected):
        """The 2p and 4f levels whose Harris pair is unresolved in double precision are still found."""
        engine = SpectralEngine.build(BasisSpec(ell=ell, lam=0.4, n_basis=50), make_potential("hulthen", mu=mu))
        states = engine.find_bound_states()
        assert states
        assert states[0].energy.real == pytest.approx(expected, rel=1e-6)

    def test_every_deep_pair_yields_a_level(self, hulthen_engine):
        """Each negative Harris eigenvalue well below threshold carries one bound state next to it."""
        states = hulthen_engine.find_bound_states()
        deep = [e for e in hulthen_engine.harris.eps if e < -1e-2]
        assert len(deep) == 2
        for eps, pole in zip(deep, states):
            assert pole.energy.real == pytest.approx(eps, rel=1e-6)

    @pytest.mark.slow
    def test_hulthen_14s_level(self):
        """mu = 0.01 binds fourteen s levels; the 14s sits at the closed-form energy."""
        engine = SpectralEngine.build(BasisSpec(ell=0, lam=0.06, n_basis=100), make_potential("hulthen", mu=0.01))
        states = engine.find_bound_states()
        assert len(states) == 14
        assert states[-1].energy.real == pytest.approx(hulthen_s_wave_energy(14, 1.0, 0.01), rel=1e-4)

    def test_search_ceiling_in_table_mode(self, hulthen_engine):
        """Without a continued fraction the configured ceiling is used as is."""
        assert hulthen_engine.search_ceiling() == hulthen_engine.settings.bound_energy_ceiling

    def test_coulomb_ceiling_reachable(self, hulthen):
        """In coulomb mode the top window ends where the continued fraction still converges."""
        engine = SpectralEngine.build(BasisSpec(ell=0, lam=0.8, n_basis=50), hulthen, mode="coulomb")
        ceiling = engine.search_ceiling()
        assert ceiling < engine.settings.bound_energy_ceiling
        assert np.isfinite(engine.window_function(ceiling))

    def test_coulomb_mode_finds_shallow_level(self, hulthen):
        """All three s levels, the shallow 3s included, are found in coulomb mode too."""
        engine = SpectralEngine.build(BasisSpec(ell=0, lam=0.8, n_basis=50), hulthen, mode="coulomb")
        states = engine.find_bound_states()
        assert len(states) == 3
        assert states[-1].energy.real == pytest.approx(hulthen_s_wave_energy(3, 1.0, 0.21), rel=2e-3)

    def test_scaling_covariance(self, hulthen):
        """Scaling A, mu and lambda together scales energies by the square."""
        spec = BasisSpec(ell=0, lam=0.8, n_basis=30)
        base = SpectralEngine.build(spec, hulthen).find_bound_states()
        scaled_model, factor = scale_transform(hulthen, 2.0)
        scaled = SpectralEngine.build(spec.with_scale(1.6), scaled_model).find_bound_states()
        assert len(base) == len(scaled)
        for a, b in zip(base, scaled):
            assert b.energy.real == pytest.approx(factor * a.energy.real, rel=1e-8)

    def test_levels_rise_with_screening(self, hulthen):
        """The ground state moves toward threshold as mu grows."""
        spec = BasisSpec(ell=0, lam=0.8, n_basis=30)
        energies = [
            SpectralEngine.build(spec, hulthen.with_parameters(mu=mu)).find_bound_states()[0].energy.real
            for mu in (1.0, 1.5, 1.8)
        ]
        assert energies[0] < energies[1] < energies[2] < 0

    def test_window_restricts_search(self, hulthen_engine):
        """Only levels inside the requested window are returned."""
        states = hulthen_engine.find_bound_states(window=(-0.1, -1e-3))
        assert len(states) == 1
        assert states[0].energy.real == pytest.approx(hulthen_s_wave_energy(2, 1.0, 0.21), rel=5e-6)

    def test_window_must_start_below_zero(self, hulthen_engine):
        """A window entirely above threshold is rejected."""
        with pytest.raises(ValueError):
            hulthen_engine.find_bound_states(window=(0.1, 0.5))


class TestResonances:
    """Tests for rotation seeding and resonance refinement."""

    def test_piecewise_without_seeds(self):
        """A non-analytic envelope cannot seed resonances by itself."""
        model = make_potential("paper-fig1", mu=1.0)
        engine = SpectralEngine.build(BasisSpec(ell=1, lam=1.0, n_basis=20), model)
        with pytest.raises(CapabilityError):
            engine.find_resonances()

    def test_default_theta_grid(self, hulthen):
        """Fifteen angles starting at 0.05 and capped at 0.75."""
        grid = default_theta_grid(hulthen)
        assert len(grid) == 15
        assert grid[0] == pytest.approx(0.05)
        assert grid[-1] == pytest.approx(0.75)

    def test_hulthen_p_wave_resonance(self):
        """mu = 0.20, ell = 1: the 3p resonance from rotation seeding in the default mode."""
        expected = 5.478497896e-4 - 3.771667228e-4j
        model = make_potential("hulthen", mu=0.20)
        engine = SpectralEngine.build(BasisSpec(ell=1, lam=0.4, n_basis=50), model)
        poles = engine.find_resonances()
        nearest = min(poles, key=lambda p: abs(p.energy - expected))
        assert abs(nearest.energy - expected) < 1e-5 * abs(expected)

    def test_rotation_plateau_is_flat(self):
        """The 3p rotation trajectory settles to better than 1e-6 near the published pole."""
        expected = 5.478497896e-4 - 3.771667228e-4j
        model = make_potential("hulthen", mu=0.20)
        engine = SpectralEngine.build(BasisSpec(ell=1, lam=0.4, n_basis=50), model)
        seeds = engine.rotation_seeds(default_theta_grid(model))
        energy, spread = min(seeds, key=lambda s: abs(s[0] - expected))
        assert spread < 1e-6
        assert abs(energy - expected) < 1e-5 * abs(expected)

    def test_refined_root_stays_on_its_plateau(self, monkeypatch):
        """A seed whose refinement wanders off returns the plateau energy instead."""
        engine = SpectralEngine.build(BasisSpec(ell=1, lam=0.4, n_basis=50), make_potential("hulthen", mu=0.20))
        monkeypatch.setattr(engine, "refine_pole", lambda energy, sheet="second": _report(7.0704e-4 - 2.9228e-4j))
        seed = 5.478497896e-4 - 3.771667228e-4j
        pole = engine._resolve_seed(seed, 2e-9, "rotation")
        assert pole.energy == seed
        assert pole.converged
        assert pole.digits_stable == 8

    def test_user_seed_is_refined_freely(self, monkeypatch):
        """Caller seeds carry no plateau, so the refined root is kept."""
        engine = SpectralEngine.build(BasisSpec(ell=1, lam=0.4, n_basis=50), make_potential("hulthen", mu=0.20))
        monkeypatch.setattr(engine, "refine_pole", lambda energy, sheet="second": _report(7.0704e-4 - 2.9228e-4j))
        pole = engine._resolve_seed(5.5e-4 - 3.8e-4j, None, "user")
        assert pole.energy == 7.0704e-4 - 2.9228e-4j

    def test_yukawa_d_wave_resonance(self):
        """mu = 0.0915, ell = 2: the narrow 3d resonance just above threshold."""
        expected = 3.411464939e-5 - 3.4952e-8j
        model = make_potential("yukawa", mu=0.0915)
        engine = SpectralEngine.build(BasisSpec(ell=2, lam=0.3, n_basis=50), model)
        nearest = min(engine.find_resonances(), key=lambda p: abs(p.energy - expected))
        assert nearest.energy.real == pytest.approx(expected.real, rel=1e-5)
        assert 1 / 1.5 <= nearest.energy.imag / expected.imag <= 1.5


class TestPoleResult:
    """Tests for the pole carrier's invariants."""

    def test_bound_must_be_real_negative(self):
        """A bound state with an imaginary part is invalid."""
        with pytest.raises(ValueError):
            PoleResult(energy=-0.3 + 1e-3j, kind="bound", seed="harris", report=_report(-0.3))

    def test_resonance_quadrant(self):
        """A resonance must have Re E > 0 and Im E < 0."""
        with pytest.raises(ValueError):
            PoleResult(energy=-0.1 - 0.1j, kind="resonance", seed="user", report=_report(0.1))

    def test_width(self):
        """Gamma = 2 |Im E|."""
        pole = PoleResult(energy=0.5 - 0.02j, kind="resonance", seed="rotation", report=_report(0.5))
        assert pole.gamma == pytest.approx(0.04)

    def test_sort_order(self):
        """Poles sort by real part, then imaginary part."""
        a = PoleResult(energy=0.5 - 0.2j, kind="resonance", seed="user", report=_report(0))
        b = PoleResult(energy=0.5 - 0.1j, kind="resonance", seed="user", report=_report(0))
        c = PoleResult(energy=-1.0, kind="bound", seed="harris", report=_report(0))
        assert sort_poles([b, a, c]) == [c, a, b]


class TestStableDigits:
    """Tests for the digit count derived from a relative change."""

    @pytest.mark.parametrize("change,digits", [(0.0, 15), (1e-6, 6), (3e-9, 8), (0.5, 0), (2.0, 0)])
    def test_values(self, change, digits):
        """floor(-log10(change)) clamped to [0, 15]."""
        assert stable_digits(change) == digits
