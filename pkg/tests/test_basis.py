"""Tests for the Laguerre overlap matrix and its quadrature rule."""
import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from screening.models.basis import BasisSpec
from screening.services.basis_service import build_overlap, laguerre_values, quadrature_rule


class TestOverlap:
    """Tests for the tridiagonal overlap matrix."""

    def test_bands(self):
        """ell = 0, N = 3: diagonal 2, 4, 6 and off-diagonal -sqrt(2), -sqrt(6)."""
        omega = build_overlap(BasisSpec(ell=0, lam=1.0, n_basis=3))
        np.testing.assert_allclose(omega.diag, [2.0, 4.0, 6.0])
        np.testing.assert_allclose(omega.offdiag, [-np.sqrt(2.0), -np.sqrt(6.0)])

    @pytest.mark.parametrize("ell,n_basis", [(0, 5), (1, 12), (3, 30)])
    def test_determinant_ratio(self, ell, n_basis):
        """det Omega_{N-1} / det Omega_N = 1/(N + 2 ell + 1)."""
        spec = BasisSpec(ell=ell, lam=1.0, n_basis=n_basis)
        _, log_full = np.linalg.slogdet(build_overlap(spec).to_dense())
        _, log_trunc = np.linalg.slogdet(build_overlap(spec.with_size(n_basis - 1)).to_dense())
        assert np.exp(log_trunc - log_full) == pytest.approx(1.0 / (n_basis + 2 * ell + 1), rel=1e-10)

    def test_positive_definite(self):
        """All eigenvalues are positive."""
        omega = build_overlap(BasisSpec(ell=2, lam=1.0, n_basis=40))
        assert np.all(np.linalg.eigvalsh(omega.to_dense()) > 0)


class TestQuadratureRule:
    """Tests for the Gauss rule hidden in the overlap matrix."""

    @pytest.mark.parametrize("ell,n_basis", [(0, 8), (2, 20)])
    def test_nodes_are_laguerre_zeros(self, ell, n_basis):
        """Nodes coincide with the zeros of L_N^nu."""
        rule = quadrature_rule(BasisSpec(ell=ell, lam=0.7, n_basis=n_basis))
        expected, _ = special.roots_genlaguerre(n_basis, 2 * ell + 1)
        np.testing.assert_allclose(rule.nodes, np.sort(expected), rtol=1e-10)

    def test_vectors_orthogonal_with_positive_first_row(self):
        """Lambda is orthogonal and its first row is positive."""
        rule = quadrature_rule(BasisSpec(ell=1, lam=1.0, n_basis=15))
        np.testing.assert_allclose(rule.vectors @ rule.vectors.T, np.eye(15), atol=1e-12)
        assert np.all(rule.vectors[0] > 0)

    @pytest.mark.parametrize("ell,n_basis", [(0, 10), (2, 25)])
    def test_nodes_interlace_with_smaller_rule(self, ell, n_basis):
        """Zeros of L_{N-1}^nu sit strictly between consecutive zeros of L_N^nu."""
        full = quadrature_rule(BasisSpec(ell=ell, lam=1.0, n_basis=n_basis)).nodes
        smaller = quadrature_rule(BasisSpec(ell=ell, lam=1.0, n_basis=n_basis - 1)).nodes
        assert np.all(full[:-1] < smaller)
        assert np.all(smaller < full[1:])

    def test_spectral_reconstruction(self):
        """sum_k Lambda_nk Lambda_mk node_k gives back Omega."""
        spec = BasisSpec(ell=1, lam=1.0, n_basis=12)
        rule = quadrature_rule(spec)
        rebuilt = (rule.vectors * rule.nodes) @ rule.vectors.T
        np.testing.assert_allclose(rebuilt, build_overlap(spec).to_dense(), atol=1e-11)

    def test_independent_of_lambda(self):
        """The rule depends on (ell, N) only."""
        a = quadrature_rule(BasisSpec(ell=1, lam=0.3, n_basis=10))
        b = quadrature_rule(BasisSpec(ell=1, lam=3.0, n_basis=10))
        assert a is b

    def test_cached_rule_is_read_only(self):
        """Callers cannot corrupt the shared rule."""
        rule = quadrature_rule(BasisSpec(ell=0, lam=1.0, n_basis=6))
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0


class TestLaguerreValues:
    """Tests for the Laguerre recurrence."""

    def test_matches_scipy(self):
        """Recurrence values agree with scipy's generalized Laguerre polynomials."""
        x = np.linspace(0.0, 12.0, 7)
        values = laguerre_values(6, 3.0, x)
        for n in range(7):
            np.testing.assert_allclose(values[n], special.eval_genlaguerre(n, 3.0, x), rtol=1e-10, atol=1e-12)


class TestBasisSpec:
    """Tests for the basis parameters."""

    def test_single_function_rejected(self):
        """The J-matrix corner needs at least two basis functions."""
        with pytest.raises(ValidationError):
            BasisSpec(ell=0, lam=1.0, n_basis=1)
