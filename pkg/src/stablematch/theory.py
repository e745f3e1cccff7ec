"""Closed-form limits and quadratures for the stable matching with pseudo-dimension d.

Notation: ``W`` has survival ``1/(1+x)``; the rescaled typical cost converges to
``W**(1/d)`` and ``I_a(t) = int_a^t x**(1-1/d) (1-x)**(1/d-1) dx``.  A scale
``a != 1`` multiplies the moment, mean and variance constants by
``a**(-p/d)``, ``a**(-1/d)`` and ``a**(-2/d)`` respectively.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, RangeError, ToleranceNotMet

_SERIES_TERMS = 120


@dataclass(frozen=True)
class LimitConstants:
    d: float
    a: float
    p: float | None
    value: float


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _check_d(d, lower=0.0, what="d"):
    if not d > lower:
        raise DomainError(f"{what} must exceed {lower:g}, got {d!r}")


def _check_a(a):
    if not a > 0:
        raise DomainError(f"scale a must be positive, got {a!r}")


def limit_survival_typical(d: float, x, a: float = 1.0):
    """``P(W**(1/d) >= a**(1/d) x) = 1 / (1 + a x**d)``."""
    _check_d(d)
    _check_a(a)
    x = np.asarray(x, dtype=float)
    out = 1.0 / (1.0 + a * np.maximum(x, 0.0) ** d)
    return out[()] if out.ndim == 0 else out


def limit_cdf_typical(d: float, x, a: float = 1.0):
    _check_d(d)
    _check_a(a)
    x = np.asarray(x, dtype=float)
    z = a * np.maximum(x, 0.0) ** d
    out = z / (1.0 + z)
    return out[()] if out.ndim == 0 else out


def moment_limit(p: float, d: float, a: float = 1.0) -> float:
    """``E[W**(p/d)] = p pi / (d sin(p pi / d))``, finite only for ``0 < p < d``."""
    _check_a(a)
    if not p > 0:
        raise DomainError(f"moment order p must be positive, got {p!r}")
    if not p < d:
        raise DomainError(f"moment of order p={p} is infinite for d={d} (need p < d)")
    return a ** (-p / d) * p * math.pi / (d * math.sin(p * math.pi / d))


def lln_constant(d: float, a: float = 1.0) -> float:
    """Limit of total cost divided by ``n**(1-1/d)``; needs ``d > 1``."""
    _check_d(d, 1.0)
    if math.isinf(d):
        return 1.0
    return moment_limit(1.0, d, a)


def limit_constants(d: float, a: float = 1.0, p: float = 1.0) -> LimitConstants:
    value = moment_limit(p, d, a) if 0 < p < d else math.inf
    return LimitConstants(d=d, a=a, p=p, value=value)


def mean_sequence(n: int) -> np.ndarray:
    """``E Y_k = sum_{i=1}^k (n-i+1)**-2`` for ``k = 1..n`` (smallest terms added first)."""
    if n < 1:
        raise RangeError(f"n must be positive, got {n}")
    r = np.arange(n, 0, -1, dtype=float)
    return np.cumsum(1.0 / (r * r))


def exact_mean_Yk(n: int, k: int) -> float:
    if not 1 <= k <= n:
        raise RangeError(f"k must lie in 1..{n}, got {k}")
    return math.fsum(1.0 / (i * i) for i in range(n, n - k, -1))


def _check_beta_args(a_lo, t, d):
    _check_d(d, 1.0)
    if not 0 <= a_lo <= t <= 1:
        raise DomainError(f"need 0 <= a <= t <= 1, got a={a_lo!r}, t={t!r}")


def incomplete_beta_I(a_lo: float, t: float, d: float, tol: float = 1e-12) -> float:
    """``int_a^t x**(1-1/d) (1-x)**(1/d-1) dx`` by adaptive quadrature.

    The substitution ``w = (1-x)**(1/d)`` turns the integrand into the bounded
    ``d (1 - w**d)**(1-1/d)`` on ``[(1-t)**(1/d), (1-a)**(1/d)]``.
    """
    _check_beta_args(a_lo, t, d)
    if a_lo == t:
        return 0.0
    w_lo = math.exp(math.log1p(-t) / d) if t < 1 else 0.0
    w_hi = math.exp(math.log1p(-a_lo) / d)
    e = 1.0 - 1.0 / d

    def f(w):
        return d * (-math.expm1(d * math.log(w)) if w > 0 else 1.0) ** e

    value, err = integrate.quad(f, w_lo, w_hi, epsabs=tol, epsrel=tol, limit=200, full_output=1)[:2]
    if err > max(10 * tol, 1e-10):
        raise ToleranceNotMet(f"incomplete beta quadrature error {err:.3g} exceeds tolerance")
    return value


def _lower_coeffs(d, terms=_SERIES_TERMS):
    # (1-x)**(1/d - 1) = sum_j r_j x**j,  r_j = (1-1/d)_j / j!
    beta = 1.0 - 1.0 / d
    r = np.empty(terms)
    r[0] = 1.0
    for j in range(1, terms):
        r[j] = r[j - 1] * (beta + j - 1) / j
    return r


def _upper_coeffs(d, terms=_SERIES_TERMS):
    # (1-s)**(1 - 1/d) = sum_j q_j s**j,  q_j = (1/d - 1)_j / j!
    g = 1.0 / d - 1.0
    q = np.empty(terms)
    q[0] = 1.0
    for j in range(1, terms):
        q[j] = q[j - 1] * (g + j - 1) / j
    return q


def beta_total(d: float) -> float:
    """``I_0(1) = Gamma(2 - 1/d) Gamma(1/d)``."""
    _check_d(d, 1.0)
    return math.gamma(2.0 - 1.0 / d) * math.gamma(1.0 / d)


def incomplete_beta_series(t, d: float):
    """``I_0(t)`` from power series; accurate to a few ulps in relative terms.

    Lower series in ``t`` on ``[0, 1/2]``; on ``(1/2, 1]`` the complement
    ``I_0(1) - int_0^{1-t} (1-s)**(1-1/d) s**(1/d-1) ds`` is expanded in ``1-t``.
    """
    _check_d(d, 1.0)
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t > 1)):
        raise DomainError("t must lie in [0, 1]")
    j = np.arange(_SERIES_TERMS)
    c = 2.0 - 1.0 / d
    lower_c = _lower_coeffs(d) / (c + j)
    upper_c = _upper_coeffs(d) / (1.0 / d + j)
    flat = np.atleast_1d(t).ravel()
    out = np.empty_like(flat)
    lo = flat <= 0.5
    tl = flat[lo]
    with np.errstate(divide="ignore"):
        out[lo] = (tl[:, None] ** (c + j[None, :]) * lower_c[None, :]).sum(axis=1)
        s = 1.0 - flat[~lo]
        out[~lo] = beta_total(d) - (s[:, None] ** (1.0 / d + j[None, :]) * upper_c[None, :]).sum(axis=1)
    out = out.reshape(t.shape)
    return out[()] if out.ndim == 0 else out


def xi_all(n: int, kappa_n: int, d: float) -> np.ndarray:
    """``Xi_k = sum_{i=k}^{m_n} (E Y_i)**(1/d - 1)`` for ``k = 1..m_n``."""
    _check_d(d, 1.0)
    m = n - kappa_n
    if kappa_n < 0 or m < 1:
        raise RangeError(f"need 0 <= kappa_n < n, got kappa_n={kappa_n}, n={n}")
    terms = mean_sequence(n)[:m] ** (1.0 / d - 1.0)
    # terms shrink with i, so accumulate from the top index down
    return np.cumsum(terms[::-1])[::-1]


def xi_k(n: int, k: int, kappa_n: int, d: float) -> float:
    m = n - kappa_n
    if not 1 <= k <= m:
        raise RangeError(f"k must lie in 1..m_n={m}, got {k}")
    return float(xi_all(n, kappa_n, d)[k - 1])


def expected_Vnk_sum(n: int, d: float, lambda_n: int, kappa_n: int) -> float:
    """``(1/d**2) sum_{k=lambda_n}^{m_n} Xi_k**2 / (n-k+1)**4``."""
    _check_d(d, 2.0)
    m = n - kappa_n
    if kappa_n < 0 or not 1 <= lambda_n <= m:
        raise RangeError(f"need 1 <= lambda_n <= n - kappa_n, got lambda_n={lambda_n}, kappa_n={kappa_n}, n={n}")
    xi = xi_all(n, kappa_n, d)[lambda_n - 1: m]
    k = np.arange(lambda_n, m + 1, dtype=float)
    return math.fsum(xi * xi / (n - k + 1.0) ** 4) / (d * d)


def gamma_d(d: float, tol: float = 1e-8) -> QuadratureResult:
    """Variance constant ``(1/d**2) int_0^1 t**-4 I_0(t)**2 dt`` for ``d > 2``.

    On ``[0, 1/2]`` the integrand is ``t**(-2/d)`` times a power series, so it is
    integrated term by term in closed form.  On ``[1/2, 1]`` the substitution
    ``s = (1-t)**(1/d)`` removes the endpoint singularity and the remainder goes
    to adaptive Gauss-Kronrod.
    """
    _check_d(d, 2.0)
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    h = 0.5
    c = 2.0 - 1.0 / d
    j = np.arange(_SERIES_TERMS)
    lower_c = _lower_coeffs(d) / (c + j)
    # square of the series: p_m = sum_i lower_c[i] lower_c[m-i]
    p = np.convolve(lower_c, lower_c)[:_SERIES_TERMS]
    expo = j + 1.0 - 2.0 / d
    near_terms = p * h ** expo / expo
    near = math.fsum(near_terms)
    # terms decay geometrically (ratio ~ 1/2), the tail is bounded by the last few
    near_err = 2.0 * float(np.abs(near_terms[-3:]).sum()) + 4 * np.finfo(float).eps * near

    s_hi = h ** (1.0 / d)

    def far(s):
        t = 1.0 - s ** d
        i0 = incomplete_beta_series(t, d)
        return t ** -4 * i0 * i0 * d * s ** (d - 1.0)

    budget = max(tol * d * d / 2.0, 1e-15)
    far_val, far_err, info = integrate.quad(far, 0.0, s_hi, epsabs=budget, epsrel=0.0, limit=500, full_output=1)[:3]
    err = (near_err + far_err) / (d * d)
    if err > tol:
        raise ToleranceNotMet(f"gamma_d({d}) stalled at error {err:.3g} > tol {tol:.3g}")
    return QuadratureResult(value=float((near + far_val) / (d * d)), abs_error_estimate=float(err), evaluations=int(info["neval"]) + _SERIES_TERMS)


def variance_constant(d: float, a: float = 1.0, tol: float = 1e-10) -> float:
    """Limit of Var(total cost) / n**(1 - 2/d), including the scale factor."""
    _check_a(a)
    return gamma_d(d, tol).value * a ** (-2.0 / d)


def gamma_table(ds, tol: float = 1e-8) -> list[tuple[float, float, float]]:
    rows = []
    for d in ds:
        r = gamma_d(float(d), tol)
        rows.append((float(d), r.value, r.abs_error_estimate))
    return rows
