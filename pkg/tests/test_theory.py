import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from oracles import gamma_monte_carlo, incomplete_beta_scipy, mean_bracket, mean_Yk_bruteforce, vnk_sum_bruteforce, xi_bruteforce
from stablematch import theory as T
from stablematch.errors import DomainError, RangeError


def test_limit_survival_examples():
    for d in (0.5, 1.0, 3.0, 10.0):
        assert T.limit_survival_typical(d, 1.0) == 0.5
        assert T.limit_survival_typical(d, 0.0) == 1.0
    assert T.limit_survival_typical(1.0, 3.0) == 0.25


def test_limit_cdf_examples():
    assert T.limit_cdf_typical(2.0, 1.0) == 0.5
    assert T.limit_cdf_typical(2.0, 0.0) == 0.0
    assert T.limit_cdf_typical(1.0, 3.0) == 0.75
    x = np.linspace(0, 5, 11)
    assert np.allclose(T.limit_cdf_typical(3.0, x, 2.0) + T.limit_survival_typical(3.0, x, 2.0), 1.0)


def test_moment_examples():
    assert T.moment_limit(1, 2) == pytest.approx(math.pi / 2, rel=1e-15)
    assert T.moment_limit(1, 3) == pytest.approx(2 * math.pi / (3 * math.sqrt(3)), rel=1e-15)
    assert T.moment_limit(1, 3) == pytest.approx(1.209200, abs=5e-7)
    with pytest.raises(DomainError):
        T.moment_limit(1, 1)
    with pytest.raises(DomainError):
        T.moment_limit(0, 3)


@pytest.mark.parametrize("p,d,a", [(1, 2, 1), (1, 3, 1), (0.5, 1.5, 1), (2, 5, 0.3), (1, 3, 1 / 48)])
def test_moment_matches_numerical_integral(p, d, a):
    # E X**p = int_0^inf p x**(p-1) P(X > x) dx for the limit law with survival 1/(1 + a x**d)
    val, _ = integrate.quad(lambda x: p * x ** (p - 1) / (1 + a * x ** d), 0, np.inf, limit=200)
    assert T.moment_limit(p, d, a) == pytest.approx(val, rel=1e-8)


def test_lln_constant():
    assert T.lln_constant(2) == pytest.approx(math.pi / 2)
    assert T.lln_constant(math.inf) == 1.0
    assert abs(T.lln_constant(1e6) - 1) < 1e-11
    with pytest.raises(DomainError):
        T.lln_constant(1)
    with pytest.raises(DomainError):
        T.lln_constant(3, a=0)


def test_limit_constants_record():
    c = T.limit_constants(3.0, 1.0, 1.0)
    assert c.value == T.moment_limit(1, 3)
    assert T.limit_constants(2.0, 1.0, 2.0).value == math.inf


def test_exact_mean_examples():
    assert T.exact_mean_Yk(7, 1) == 1 / 49
    v = T.exact_mean_Yk(10, 5)
    assert v == pytest.approx(sum(1 / i ** 2 for i in range(6, 11)), rel=1e-15)
    assert 1 / 6 - 1 / 10 <= v <= 1 / 5 - 1 / 10
    for n in (10, 1000, 10 ** 5):
        assert T.exact_mean_Yk(n, n) < math.pi ** 2 / 6
    with pytest.raises(RangeError):
        T.exact_mean_Yk(5, 6)


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_mean_bracket_all_k(n):
    ey = T.mean_sequence(n)
    for k in range(1, n):
        lo, hi = mean_bracket(n, k)
        assert lo <= ey[k - 1] <= hi
        assert ey[k - 1] == pytest.approx(mean_Yk_bruteforce(n, k), rel=1e-13)


def test_incomplete_beta_examples():
    assert abs(T.incomplete_beta_I(0.0, 1.0, 2.0) - math.pi / 2) < 1e-10
    assert abs(T.beta_total(2.0) - math.pi / 2) < 1e-15
    assert T.incomplete_beta_I(0.3, 0.3, 3.0) == 0.0
    with pytest.raises(DomainError):
        T.incomplete_beta_I(0.5, 0.4, 3.0)
    with pytest.raises(DomainError):
        T.incomplete_beta_I(0.0, 0.5, 1.0)


@settings(max_examples=100, deadline=None)
@given(d=st.floats(1.1, 12.0), s=st.floats(0, 1), t=st.floats(0, 1))
def test_incomplete_beta_additivity(d, s, t):
    s, t = min(s, t), max(s, t)
    whole = T.incomplete_beta_I(0.0, t, d)
    assert abs(whole - (T.incomplete_beta_I(0.0, s, d) + T.incomplete_beta_I(s, t, d))) < 1e-10


@settings(max_examples=100, deadline=None)
@given(d=st.floats(1.1, 12.0), t=st.floats(0, 1))
def test_incomplete_beta_routes_agree(d, t):
    ref = incomplete_beta_scipy(0.0, t, d)
    assert T.incomplete_beta_I(0.0, t, d) == pytest.approx(ref, rel=1e-10, abs=1e-14)
    assert T.incomplete_beta_series(t, d) == pytest.approx(ref, rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("d", [1.5, 2.0, 3.0, 7.0])
def test_incomplete_beta_total(d):
    assert T.incomplete_beta_series(1.0, d) == pytest.approx(T.beta_total(d), rel=1e-14)
    assert T.incomplete_beta_I(0.0, 1.0, d) == pytest.approx(T.beta_total(d), rel=1e-11)


def test_xi_examples():
    n, kap, d = 100, 5, 3.0
    m = n - kap
    assert T.xi_k(n, m, kap, d) == pytest.approx(T.exact_mean_Yk(n, m) ** (1 / d - 1), rel=1e-15)
    assert T.xi_k(n, 50, kap, d) == pytest.approx(xi_bruteforce(n, 50, kap, d), rel=1e-12)
    with pytest.raises(RangeError):
        T.xi_k(n, m + 1, kap, d)


@pytest.mark.parametrize("d", [2.5, 3.0, 4.0])
def test_xi_sandwich_grid(d):
    for n in np.unique(np.geomspace(20, 5000, 10).astype(int)):
        kap = max(1, math.ceil(math.log(n)))
        m = n - kap
        xi = T.xi_all(n, kap, d)
        scale = n ** (2 - 1 / d)
        for k in np.unique(np.linspace(2, m, 10).astype(int)):
            lo = scale * T.incomplete_beta_I((kap - 1) / n, (n - k) / n, d)
            hi = scale * T.incomplete_beta_I(0.0, (n - k + 2) / n, d)
            assert lo <= xi[k - 1] <= hi, (n, k)


def test_vnk_single_term():
    n, d, kap = 200, 3.0, 7
    m = n - kap
    xi_m = T.xi_k(n, m, kap, d)
    assert T.expected_Vnk_sum(n, d, m, kap) == pytest.approx(xi_m ** 2 / (d * d * (kap + 1) ** 4), rel=1e-14)


def test_vnk_bruteforce():
    assert T.expected_Vnk_sum(60, 4.0, 5, 3) == pytest.approx(vnk_sum_bruteforce(60, 4.0, 5, 3), rel=1e-12)


def test_vnk_monotone_in_lambda():
    n, d, kap = 2000, 4.0, 8
    values = [T.expected_Vnk_sum(n, d, lam, kap) for lam in (1, 10, 100, 1000, n - kap)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_vnk_sum_approaches_gamma():
    # kappa_n = ceil(log n); the log**4 default leaves too short a window at this n
    n, d = 10_000, 4.0
    lam = math.ceil(n ** (0.5 + 1 / (4 * (d + 1))))
    kap = math.ceil(math.log(n))
    ratio = T.expected_Vnk_sum(n, d, lam, kap) / n ** (1 - 2 / d) / T.gamma_d(d).value
    assert abs(ratio - 1) <= 0.10


def test_vnk_domain():
    with pytest.raises(DomainError):
        T.expected_Vnk_sum(100, 2.0, 5, 3)
    with pytest.raises(RangeError):
        T.expected_Vnk_sum(100, 3.0, 98, 3)


def test_gamma_domain():
    for d in (2.0, 1.5, 0.0):
        with pytest.raises(DomainError):
            T.gamma_d(d)
    with pytest.raises(DomainError):
        T.gamma_d(3.0, tol=0.0)


@pytest.mark.parametrize("d", [2.5, 3.0, 4.0, 6.0])
def test_gamma_refinement(d):
    a = T.gamma_d(d, 1e-8)
    b = T.gamma_d(d, 1e-10)
    assert abs(a.value - b.value) <= 1e-7
    assert a.abs_error_estimate <= 1e-8 and b.abs_error_estimate <= 1e-10
    assert b.evaluations > 0


@pytest.mark.parametrize("d", [2.3, 3.0, 4.0, 8.0])
def test_gamma_against_direct_quadrature(d):
    # independent route: integrate t**-4 I_0(t)**2 with I_0 from scipy's regularized beta
    f = lambda t: t ** -4 * incomplete_beta_scipy(0.0, t, d) ** 2
    val, _ = integrate.quad(f, 0, 1, limit=400, epsabs=1e-13, epsrel=1e-12)
    assert T.gamma_d(d, 1e-10).value == pytest.approx(val / d ** 2, rel=1e-7)


def test_gamma_monte_carlo_oracle():
    est, se = gamma_monte_carlo(3.0, points=10_000_000, seed=2024)
    assert abs(T.gamma_d(3.0).value - est) <= 3 * se


def test_gamma_table_shape():
    ds = np.linspace(2.1, 8.0, 40)
    rows = T.gamma_table(ds)
    values = np.array([v for _, v, _ in rows])
    assert np.all(np.isfinite(values)) and np.all(values > 0)
    assert np.all(np.diff(values) < 0)
    assert values[0] > 10 * values[-1]
    assert [r[0] for r in rows] == pytest.approx(list(ds))


def test_variance_constant_scale():
    g = T.gamma_d(4.0).value
    assert T.variance_constant(4.0, 1.0) == pytest.approx(g, rel=1e-9)
    assert T.variance_constant(4.0, 16.0) == pytest.approx(g / 4, rel=1e-9)


@settings(max_examples=20, deadline=None)
@given(d=st.floats(1.05, 20.0), frac=st.floats(0.01, 0.99))
def test_moment_definition(d, frac):
    p = frac * d
    assert T.moment_limit(p, d) * math.sin(p * math.pi / d) * d / (p * math.pi) == pytest.approx(1.0, rel=1e-13)


def test_gamma_positive_on_grid():
    for d in (2.1, 2.5, 3.0, 4.0, 5.0, 8.0):
        r = T.gamma_d(d)
        assert math.isfinite(r.value) and r.value > 0
