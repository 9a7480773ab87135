"""Tests for screened-Coulomb envelopes, scaling and critical screening formulas."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from screening.services.potential_service import (
    critical_screening_fit,
    effective_potential,
    envelope_value,
    hulthen_s_wave_critical,
    hulthen_s_wave_energy,
    make_potential,
    make_superposition,
    potential_value,
    scale_to_unit_range,
    scale_transform,
)
from screening.utils.exceptions import CapabilityError


class TestEnvelopes:
    """Tests for the envelope presets."""

    @pytest.mark.parametrize("name", ["yukawa", "hulthen", "paper-fig1", "paper-fig1-flat"])
    def test_unity_at_origin(self, name):
        """Every preset starts at F(0) = 1."""
        model = make_potential(name, mu=0.3)
        assert float(envelope_value(model, np.array(0.0))) == pytest.approx(1.0)

    def test_hulthen_series_joins_closed_form(self, hulthen):
        """The small-x series and x/(e^x - 1) agree across the cutoff."""
        below = float(hulthen.envelope.value(np.array(0.00999)))
        above = float(hulthen.envelope.value(np.array(0.01001)))
        assert below == pytest.approx(0.00999 / math.expm1(0.00999), rel=1e-12)
        assert above == pytest.approx(0.01001 / math.expm1(0.01001), rel=1e-12)

    def test_piecewise_branches(self):
        """The printed piecewise shape: x+1, then 1, then 4-x, then 0."""
        model = make_potential("paper-fig1", mu=1.0)
        xs = np.array([0.5, 1.5, 3.0, 5.0])
        np.testing.assert_allclose(envelope_value(model, xs), [1.5, 1.0, 1.0, 0.0])

    def test_piecewise_rejects_complex(self):
        """A piecewise envelope cannot be continued off the real axis."""
        model = make_potential("paper-fig1", mu=1.0)
        with pytest.raises(CapabilityError):
            envelope_value(model, np.array([1.0 + 0.1j]))

    def test_unnormalized_envelope_rejected(self):
        """Breakpoints that do not start at 1 fail validation."""
        with pytest.raises(ValidationError):
            make_potential("custom", mu=1.0, breakpoints=[(0.0, 2.0), (1.0, 0.0)])

    def test_unordered_breakpoints_rejected(self):
        """Abscissae must be non-decreasing."""
        with pytest.raises(ValidationError):
            make_potential("custom", mu=1.0, breakpoints=[(0.0, 1.0), (2.0, 0.5), (1.0, 0.0)])

    def test_unknown_preset(self):
        """An unknown name without breakpoints is an error."""
        with pytest.raises(ValueError):
            make_potential("gaussian", mu=1.0)


class TestEffectivePotential:
    """Tests for U(r) = (A/r)(1 - F(mu r))."""

    def test_yukawa_origin_limit(self, yukawa):
        """U(0) = A mu for the Yukawa envelope."""
        assert float(effective_potential(yukawa, np.array(0.0))) == pytest.approx(0.5)

    def test_hulthen_origin_limit(self, hulthen):
        """U(0) = A mu / 2 for the Hulthen envelope."""
        assert float(effective_potential(hulthen, np.array(0.0))) == pytest.approx(0.105)

    def test_splits_full_potential(self, hulthen):
        """V(r) = -A/r + U(r) when Z = 0."""
        r = np.array([0.3, 1.0, 7.5])
        np.testing.assert_allclose(
            potential_value(hulthen, r), -1.0 / r + effective_potential(hulthen, r), rtol=1e-12
        )

    def test_hulthen_closed_form(self, hulthen):
        """Hulthen V(r) = -A mu / (e^{mu r} - 1)."""
        r = np.array([0.5, 2.0, 10.0])
        np.testing.assert_allclose(potential_value(hulthen, r), -0.21 / np.expm1(0.21 * r), rtol=1e-12)

    def test_hulthen_far_tail_is_finite(self):
        """Far past the expm1 overflow U(r) tends to A/r instead of NaN."""
        model = make_potential("hulthen", mu=1.9)
        r = np.array([400.0, 800.0, 5000.0])
        values = effective_potential(model, r)
        assert np.all(np.isfinite(values))
        np.testing.assert_allclose(values, 1.0 / r, rtol=1e-12)

    def test_hulthen_rotated_tail_is_finite(self):
        """A rotated radius with a huge real part stays finite too."""
        model = make_potential("hulthen", mu=1.9)
        r = np.array([800.0 * np.exp(0.3j)])
        np.testing.assert_allclose(effective_potential(model, r), 1.0 / r, rtol=1e-12)

    def test_superposition_mixes_envelopes(self):
        """Equal weights average the two envelopes."""
        model = make_superposition([(0.5, "yukawa"), (0.5, "hulthen")], mu=1.0)
        x = np.array([0.7])
        expected = 0.5 * np.exp(-x) + 0.5 * x / np.expm1(x)
        np.testing.assert_allclose(envelope_value(model, x), expected, rtol=1e-12)


class TestScaling:
    """Tests for the strength/screening scaling law."""

    def test_scale_transform(self, hulthen):
        """Doubling A doubles mu and quadruples energies."""
        scaled, factor = scale_transform(hulthen, 2.0)
        assert scaled.strength == 2.0
        assert scaled.mu == pytest.approx(0.42)
        assert factor == pytest.approx(4.0)

    def test_closed_form_obeys_scaling(self):
        """E(A, mu) = A^2 E(1, mu/A) for the Hulthen s-wave formula."""
        assert hulthen_s_wave_energy(2, 3.0, 0.6) == pytest.approx(9.0 * hulthen_s_wave_energy(2, 1.0, 0.2))

    def test_unit_range(self, hulthen):
        """Rescaling to mu = 1 leaves the ratio A/mu unchanged."""
        scaled, _ = scale_to_unit_range(hulthen)
        assert scaled.mu == pytest.approx(1.0)
        assert scaled.strength == pytest.approx(1.0 / 0.21)


class TestCriticalScreening:
    """Tests for the closed-form and fitted critical screening values."""

    def test_hulthen_ground_state_energy(self):
        """The 1s level at mu = 0.21 is -0.4005125."""
        assert hulthen_s_wave_energy(1, 1.0, 0.21) == pytest.approx(-0.4005125, rel=1e-12)

    def test_unbound_level_is_nan(self):
        """Past critical screening the formula has no level."""
        assert math.isnan(hulthen_s_wave_energy(2, 1.0, 0.6))

    @pytest.mark.parametrize("n", [1, 2, 3, 14])
    def test_fit_is_exact_for_s_waves(self, n):
        """At ell = 0 the fit reduces to the exact 2/n^2."""
        assert critical_screening_fit(n, 0) == pytest.approx(hulthen_s_wave_critical(n), rel=1e-12)

    def test_fit_p_wave(self):
        """k = 2, ell = 1 carries the angular-momentum corrections."""
        assert critical_screening_fit(2, 1) == pytest.approx(0.37695, abs=1e-5)

    def test_fit_needs_k_above_ell(self):
        """k must exceed ell."""
        with pytest.raises(ValueError):
            critical_screening_fit(2, 2)
