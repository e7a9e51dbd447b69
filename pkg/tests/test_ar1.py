import numpy as np
import pytest
from numpy.testing import assert_allclose

from pretestci import (
    Ar1Model,
    DomainError,
    ar1_covariance,
    ar1_logdet,
    ar1_precision,
    simulate_edagger,
    simulate_edagger_many,
    whiten,
)
from pretestci.ar1 import apply_precision


class TestCovariance:
    def test_psi_zero_is_identity(self):
        assert_allclose(ar1_covariance(0.0, 3), np.eye(3))

    def test_two_by_two(self):
        assert_allclose(ar1_covariance(0.5, 2), [[1.0, 0.5], [0.5, 1.0]])

    def test_toeplitz_powers(self):
        got = ar1_covariance(0.9, 4)
        first_row = [1.0, 0.9, 0.81, 0.729]
        assert_allclose(got[0], first_row)
        assert_allclose(got, got.T)

    def test_positive_definite(self):
        for psi in (0.0, 0.5, 0.99):
            vals = np.linalg.eigvalsh(ar1_covariance(psi, 8))
            assert vals[0] > 0

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            ar1_covariance(bad, 3)
        with pytest.raises(DomainError):
            ar1_covariance(0.5, 0)


class TestPrecision:
    def test_psi_zero(self):
        assert_allclose(ar1_precision(0.0, 3), np.eye(3))

    def test_against_numeric_inverse(self):
        # oracle: dense numeric inversion of the covariance
        expected = np.linalg.inv(ar1_covariance(0.5, 3))
        assert_allclose(ar1_precision(0.5, 3), expected, atol=1e-12)
        frozen = (4.0 / 3.0) * np.array(
            [[1.0, -0.5, 0.0], [-0.5, 1.25, -0.5], [0.0, -0.5, 1.0]]
        )
        assert_allclose(ar1_precision(0.5, 3), frozen, atol=1e-12)

    def test_two_by_two_analytic(self):
        expected = (1.0 / 0.19) * np.array([[1.0, -0.9], [-0.9, 1.0]])
        assert_allclose(ar1_precision(0.9, 2), expected, rtol=1e-12)

    def test_product_identity_over_grid(self):
        for psi in (0.0, 0.5, 0.9, 0.99):
            for n in range(2, 51):
                prod = ar1_precision(psi, n) @ ar1_covariance(psi, n)
                assert np.max(np.abs(prod - np.eye(n))) < 1e-10

    def test_needs_two_points(self):
        with pytest.raises(DomainError):
            ar1_precision(0.5, 1)


class TestLogdet:
    def test_identity(self):
        assert ar1_logdet(0.0, 10) == 0.0

    def test_closed_form_small(self):
        assert_allclose(ar1_logdet(0.6, 2), np.log(0.64), rtol=1e-12)

    def test_against_dense_factorization(self):
        assert_allclose(ar1_logdet(0.5, 4), 3 * np.log(0.75), rtol=1e-12)
        for psi in (0.2, 0.5, 0.9, 0.99):
            for n in (2, 7, 30):
                sign, dense = np.linalg.slogdet(ar1_covariance(psi, n))
                assert sign == 1.0
                assert abs(ar1_logdet(psi, n) - dense) < 1e-8


class TestApplyPrecision:
    def test_matches_matrix_product(self):
        rng = np.random.default_rng(0)
        for psi in (0.0, 0.4, 0.95):
            v = rng.standard_normal(9)
            assert_allclose(
                apply_precision(psi, v), ar1_precision(psi, 9) @ v, atol=1e-12
            )

    def test_matrix_argument(self):
        rng = np.random.default_rng(1)
        v = rng.standard_normal((6, 3))
        assert_allclose(
            apply_precision(0.7, v), ar1_precision(0.7, 6) @ v, atol=1e-12
        )


class TestWhiten:
    def test_normal_equations_identity(self):
        # T'T must equal (1 - psi^2) G^{-1}
        for psi in (0.0, 0.3, 0.8):
            n = 7
            t = whiten(psi, np.eye(n))
            assert_allclose(
                t.T @ t, (1 - psi**2) * ar1_precision(psi, n), atol=1e-12
            )


class TestSimulate:
    def test_psi_zero_iid(self):
        rng = np.random.default_rng(42)
        draws = simulate_edagger_many(0.0, 4, 100_000, rng)
        se = 1.0 / np.sqrt(draws.shape[1])
        # marginal means ~ 0, variances ~ 1, adjacent correlation ~ 0
        assert np.max(np.abs(draws.mean(axis=1))) < 4 * se
        assert np.max(np.abs(draws.var(axis=1) - 1.0)) < 3 * np.sqrt(2) * se
        corr = np.mean(draws[0] * draws[1])
        assert abs(corr) < 3 * se

    @pytest.mark.parametrize("psi", [0.3, 0.7, 0.95])
    def test_lag_one_autocorrelation(self, psi):
        rng = np.random.default_rng(7)
        m = 100_000
        draws = simulate_edagger_many(psi, 2, m, rng)
        est = np.mean(draws[0] * draws[1])
        se = np.sqrt((1.0 + psi**2) / m)
        assert abs(est - psi) < 3 * se

    @pytest.mark.parametrize("psi", [0.3, 0.9])
    def test_unit_stationary_variance(self, psi):
        rng = np.random.default_rng(11)
        m = 100_000
        draws = simulate_edagger_many(psi, 5, m, rng)
        se = np.sqrt(2.0 / m)
        assert np.max(np.abs(draws.var(axis=1) - 1.0)) < 3 * se

    def test_single_draw_matches_batch_stream(self):
        one = simulate_edagger(0.5, 6, np.random.default_rng(5))
        batch = simulate_edagger_many(0.5, 6, 1, np.random.default_rng(5))
        assert_allclose(one, batch[:, 0])


def test_model_wrapper():
    model = Ar1Model(psi=0.5, n=4)
    assert_allclose(model.covariance(), ar1_covariance(0.5, 4))
    assert_allclose(model.precision(), ar1_precision(0.5, 4))
    assert model.logdet() == ar1_logdet(0.5, 4)
    assert model.simulate(np.random.default_rng(0), size=3).shape == (4, 3)
    with pytest.raises(DomainError):
        Ar1Model(psi=1.0, n=4)
