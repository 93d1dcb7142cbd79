import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from tsecon.errors import DimensionMismatch, LagOutOfRange, LagTooLarge, NegativeDiagonal
from tsecon.hac import (
    LITERAL,
    STANDARD,
    HacConfig,
    bartlett_weight,
    newey_west_cov,
    newey_west_lag,
    refit_with_hac,
    robust_se,
)
from tsecon.linreg import DesignMatrix, ols


def naive_nw(X, e, L):
    """Term-by-term sandwich with Bartlett weights, written as plain loops."""
    T, k = X.shape
    omega = [[0.0] * k for _ in range(k)]
    for t in range(T):
        for i in range(k):
            for j in range(k):
                omega[i][j] += X[t, i] * X[t, j] * e[t] * e[t]
    for l in range(1, L + 1):
        w = 1.0 - l / (L + 1.0)
        for t in range(l, T):
            for i in range(k):
                for j in range(k):
                    cross = X[t, i] * X[t - l, j] + X[t - l, i] * X[t, j]
                    omega[i][j] += w * cross * e[t] * e[t - l]
    bread = np.linalg.inv(X.T @ X)
    return bread @ np.array(omega) @ bread


def random_case(rng, T=None, k=None):
    T = T or int(rng.integers(5, 11))
    k = k or int(rng.integers(1, 4))
    X = rng.normal(size=(T, k))
    e = rng.normal(size=T) * rng.uniform(0.2, 3.0, size=T)
    L = int(rng.integers(0, min(3, T - 2) + 1))
    return X, e, L


class TestBartlett:
    @pytest.mark.parametrize("l, L, w", [(1, 4, 0.8), (4, 4, 0.2), (1, 1, 0.5)])
    def test_values(self, l, L, w):
        assert bartlett_weight(l, L) == pytest.approx(w, abs=1e-15)

    @pytest.mark.parametrize("l, L", [(0, 4), (5, 4), (1, 0)])
    def test_out_of_range(self, l, L):
        with pytest.raises(LagOutOfRange):
            bartlett_weight(l, L)


def test_hand_example():
    X = np.ones((3, 1))
    V = newey_west_cov(X, [1.0, -1.0, 1.0], HacConfig(1))
    assert V[0, 0] == pytest.approx(1 / 9, rel=1e-14)
    assert robust_se(V)[0] == pytest.approx(1 / 3, rel=1e-14)


def test_lag_zero_is_white():
    rng = np.random.default_rng(2)
    for _ in range(50):
        X, e, _ = random_case(rng)
        B = np.linalg.inv(X.T @ X)
        white = B @ ((X * e[:, None] ** 2).T @ X) @ B
        V = newey_west_cov(X, e, HacConfig(0))
        assert_allclose(V, white, rtol=1e-14, atol=1e-14 * np.abs(white).max())


def test_matches_naive_loops():
    rng = np.random.default_rng(20240601)
    for _ in range(100):
        X, e, L = random_case(rng)
        V = newey_west_cov(X, e, HacConfig(L))
        ref = naive_nw(X, e, L)
        assert_allclose(V, ref, rtol=1e-12, atol=1e-12 * np.abs(ref).max())


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_symmetric_psd_diagonal(seed):
    rng = np.random.default_rng(seed)
    X, e, L = random_case(rng, T=int(rng.integers(6, 40)))
    V = newey_west_cov(X, e, HacConfig(L))
    assert_array_equal(V, V.T)
    assert np.all(np.diag(V) >= 0)
    assert np.linalg.eigvalsh(V).min() >= -1e-10 * np.abs(V).max()


def test_literal_scaling_is_standard_over_T():
    rng = np.random.default_rng(9)
    X, e, _ = random_case(rng, T=30, k=3)
    std = newey_west_cov(X, e, HacConfig(4, STANDARD))
    literal = newey_west_cov(X, e, HacConfig(4, LITERAL))
    assert_array_equal(literal, std / 30)
    adj = newey_west_cov(X, e, HacConfig(4, STANDARD, small_sample_adjust=True))
    assert_allclose(adj, std * 30 / 27, rtol=1e-15)


def test_recomputation_is_bitwise():
    rng = np.random.default_rng(4)
    X, e, _ = random_case(rng, T=40, k=2)
    assert_array_equal(newey_west_cov(X, e), newey_west_cov(X.copy(), e.copy()))


def test_errors():
    X = np.ones((5, 1))
    with pytest.raises(LagTooLarge):
        newey_west_cov(X, np.ones(5), HacConfig(4))
    with pytest.raises(DimensionMismatch):
        newey_west_cov(X, np.ones(4), HacConfig(1))
    with pytest.raises(ValueError):
        HacConfig(-1)
    with pytest.raises(ValueError):
        HacConfig(2, "other")


class TestRobustSe:
    def test_identity(self):
        assert_array_equal(robust_se(np.eye(2)), [1, 1])

    def test_diag(self):
        assert_array_equal(robust_se(np.diag([4.0, 9.0])), [2, 3])

    def test_tiny_negative_clamped(self):
        assert_array_equal(robust_se(np.diag([-1e-13, 1.0])), [0, 1])

    def test_negative(self):
        with pytest.raises(NegativeDiagonal) as info:
            robust_se(np.diag([1.0, -1e-6]))
        assert info.value.index == 1


def test_auto_lag_rule():
    assert newey_west_lag(79) == 3
    assert newey_west_lag(100) == 4
    assert newey_west_lag(500) == 5


class TestRefit:
    def setup_method(self):
        rng = np.random.default_rng(31)
        T = 500
        x = rng.normal(size=(T, 2))
        self.X = DesignMatrix(np.column_stack([np.ones(T), x]), ("c", "a", "b"), True)
        self.y = 0.5 + x @ np.array([0.3, -0.2]) + rng.normal(size=T)
        self.fit = ols(self.y, self.X)

    def test_coefficients_bitwise(self):
        hac = refit_with_hac(self.fit, self.X, HacConfig(4))
        assert hac.coefficients is self.fit.coefficients
        assert_array_equal(hac.residuals, self.fit.residuals)
        assert hac.r_squared == self.fit.r_squared
        assert hac.covariance_kind == "newey_west(4)"

    def test_close_to_classical_when_homoskedastic(self):
        hac = refit_with_hac(self.fit, self.X, HacConfig(0))
        ratio = hac.t_values / self.fit.t_values
        assert np.all(np.abs(ratio - 1) <= 0.15)

    def test_shape_check(self):
        with pytest.raises(DimensionMismatch):
            refit_with_hac(self.fit, self.X.X[:, :2])
