"""Edge-cost laws with pseudo-dimension metadata.

A law has pseudo-dimension ``d`` and scale ``a`` when its density behaves like
``a * d * x**(d - 1)`` near zero, i.e. ``cdf(z) ~ a * z**d``.  ``zeta`` is the
exponent of the correction term, ``cdf(z) = a z**d + O(z**(d + zeta))``, and is
left as ``None`` when unknown.

Every law is paired with the exponential base through the quantile coupling
``y -> quantile(1 - exp(-y))``.  The map is strictly increasing, so it keeps the
order of edge costs and hence the stable matching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np
from scipy import special

from .errors import DomainError, InvalidParameter

KINDS = ("exponential", "weibull", "maxuniform", "chisquared", "custom")

_ALIASES = {
    "exp": "exponential",
    "exponential": "exponential",
    "weibull": "weibull",
    "maxuniform": "maxuniform",
    "max_uniform": "maxuniform",
    "chisquared": "chisquared",
    "chi_squared": "chisquared",
    "chi2": "chisquared",
    "custom": "custom",
}


@dataclass(frozen=True)
class DistributionSpec:
    """Declarative description of an edge-cost law.

    ``params`` holds the kind-specific parameters: ``scale`` for exponential
    and Weibull (shape is ``d``), ``k`` for chi-squared.  ``d`` is required for
    Weibull and max-uniform and derived for the others.  ``a`` and ``zeta``
    only need to be given for custom laws.
    """

    kind: str
    d: float | None = None
    a: float | None = None
    zeta: float | None = None
    params: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, raw: Mapping[str, Any]) -> "DistributionSpec":
        raw = dict(raw)
        kind = raw.pop("kind", None)
        if kind is None:
            raise InvalidParameter("distribution needs a 'kind'")
        d = raw.pop("d", None)
        a = raw.pop("a", None)
        zeta = raw.pop("zeta", None)
        return cls(kind=str(kind), d=d, a=a, zeta=zeta, params=raw)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        for name in ("d", "a", "zeta"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        out.update(self.params)
        return out


def _positive(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidParameter(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameter(f"{name} must be positive and finite, got {value!r}")
    return value


def _positive_int(name, value):
    if isinstance(value, bool):
        raise InvalidParameter(f"{name} must be an integer >= 1, got {value!r}")
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, (int, np.integer)) or value < 1:
        raise InvalidParameter(f"{name} must be an integer >= 1, got {value!r}")
    return int(value)


class Distribution:
    """A continuous law on ``[0, inf)`` with sampling, cdf and quantile.

    Instances are immutable.  All methods accept scalars or arrays.
    """

    kind: str = "custom"

    def __init__(self, d: float, a: float = 1.0, zeta: float | None = None, spec: DistributionSpec | None = None):
        self.d = _positive("d", d)
        self.a = _positive("a", a)
        if zeta is not None:
            zeta = float(zeta)
            if not zeta > 0:
                raise InvalidParameter(f"zeta must be positive, got {zeta!r}")
        self.zeta = zeta
        self.spec = spec

    def __repr__(self):
        return f"{type(self).__name__}(d={self.d:g}, a={self.a:g}, zeta={self.zeta})"

    def _cdf(self, x):
        raise NotImplementedError

    def _quantile(self, u):
        raise NotImplementedError

    def cdf(self, x):
        """P(cost <= x); negative arguments give 0."""
        x = np.asarray(x, dtype=float)
        out = self._cdf(np.maximum(x, 0.0))
        out = np.where(x < 0, 0.0, out)
        return out[()] if out.ndim == 0 else out

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(~(u >= 0)) or np.any(u >= 1):
            raise DomainError("quantile needs 0 <= u < 1")
        out = np.asarray(self._quantile(u), dtype=float)
        return out[()] if out.ndim == 0 else out

    def quantile_couple(self, y_exp):
        """Map exponential-base values through ``quantile(1 - exp(-y))``."""
        y = np.asarray(y_exp, dtype=float)
        out = np.asarray(self._couple(y), dtype=float)
        return out[()] if out.ndim == 0 else out

    def _couple(self, y):
        return self._quantile(-np.expm1(-y))

    def sample(self, rng: np.random.Generator, size=None):
        u = rng.random(size)
        return self._quantile(u)

    def describe(self) -> dict:
        out = self.spec.to_dict() if self.spec is not None else {"kind": self.kind}
        out.update({"d": self.d, "a": self.a, "zeta": self.zeta})
        return out


class Weibull(Distribution):
    """Weibull with shape ``d`` and scale ``lam``; ``d = 1`` is the exponential law."""

    kind = "weibull"

    def __init__(self, d: float, scale: float = 1.0, spec=None):
        d = _positive("d", d)
        self.scale = _positive("scale", scale)
        super().__init__(d=d, a=self.scale ** (-d), zeta=d, spec=spec)

    def _cdf(self, x):
        return -np.expm1(-((x / self.scale) ** self.d))

    def _quantile(self, u):
        return self.scale * (-np.log1p(-u)) ** (1.0 / self.d)

    def _couple(self, y):
        return self.scale * y ** (1.0 / self.d)

    def sample(self, rng, size=None):
        return self.scale * rng.weibull(self.d, size)


class Exponential(Weibull):
    kind = "exponential"

    def __init__(self, scale: float = 1.0, spec=None):
        super().__init__(1.0, scale=scale, spec=spec)

    def _couple(self, y):
        return self.scale * y


class MaxUniform(Distribution):
    """Maximum of ``d`` independent standard uniforms: cdf is exactly ``z**d`` on [0, 1]."""

    kind = "maxuniform"

    def __init__(self, d: int, spec=None):
        d = _positive_int("d", d)
        super().__init__(d=d, a=1.0, zeta=math.inf, spec=spec)

    def _cdf(self, x):
        return np.minimum(x, 1.0) ** self.d

    def _quantile(self, u):
        return u ** (1.0 / self.d)

    def sample(self, rng, size=None):
        if size is None:
            return float(rng.random(self.d).max())
        shape = (size,) if np.isscalar(size) else tuple(size)
        return rng.random(shape + (int(self.d),)).max(axis=-1)


class ChiSquared(Distribution):
    """Chi-squared with ``k`` degrees of freedom: ``d = k/2``, ``zeta = 1``.

    The scale is ``a = 1 / (2**(k/2) * Gamma(k/2 + 1))``; for ``k = 2`` this
    is the exponential law with mean 2.
    """

    kind = "chisquared"
    _XTOL = 1e-12

    def __init__(self, k: int, spec=None):
        self.k = _positive_int("k", k)
        h = self.k / 2.0
        a = math.exp(-h * math.log(2.0) - math.lgamma(h + 1.0))
        super().__init__(d=h, a=a, zeta=1.0, spec=spec)
        self._half = h
        self._lognorm = -h * math.log(2.0) - math.lgamma(h)

    def _cdf(self, x):
        return special.gammainc(self._half, x / 2.0)

    def _sf(self, x):
        return special.gammaincc(self._half, x / 2.0)

    def _pdf(self, x):
        with np.errstate(divide="ignore", invalid="ignore"):
            logp = special.xlogy(self._half - 1.0, x) - x / 2.0 + self._lognorm
        return np.exp(logp)

    def _quantile(self, u):
        u = np.asarray(u, dtype=float)
        return self._solve(u, 1.0 - u)

    def _couple(self, y):
        y = np.asarray(y, dtype=float)
        return self._solve(-np.expm1(-y), np.exp(-y))

    def sample(self, rng, size=None):
        return rng.chisquare(self.k, size)

    def _solve(self, u, s):
        """Invert the cdf at level ``u`` (equivalently the survival at ``s = 1 - u``).

        Geometric bracketing, then Newton steps that fall back to bisection
        whenever they leave the bracket.  Levels above one half are solved
        against the survival function so that the upper tail keeps precision.
        """
        shape = np.shape(u)
        u = np.atleast_1d(np.asarray(u, dtype=float)).ravel()
        s = np.broadcast_to(np.asarray(s, dtype=float), shape).ravel()
        out = np.zeros(u.shape)
        active = u > 0
        if not np.any(active):
            return out.reshape(shape)
        uu, ss = u[active], s[active]
        upper = uu > 0.5

        def g_at(x, i):
            # increasing in x, zero at the root
            with np.errstate(invalid="ignore"):
                return np.where(upper[i], ss[i] - self._sf(x), self._cdf(x) - uu[i])

        def g(x):
            return g_at(x, slice(None))

        # scipy's inverse regularized gamma is the seed; the iteration below
        # certifies it against this module's own cdf
        with np.errstate(all="ignore"):
            x0 = np.where(upper, 2.0 * special.gammainccinv(self._half, ss), 2.0 * special.gammaincinv(self._half, uu))
        fallback = np.where(upper, float(self.k), (uu / self.a) ** (1.0 / self.d))
        x0 = np.where(np.isfinite(x0) & (x0 > 0), x0, fallback)
        x0 = np.clip(x0, 1e-300, None)
        lo, hi = x0 * (1 - 1e-9), x0 * (1 + 1e-9)
        for _ in range(2100):
            bad = g(hi) < 0
            if not np.any(bad):
                break
            hi = np.where(bad, hi * 2.0, hi)
        for _ in range(2100):
            bad = g(lo) > 0
            if not np.any(bad):
                break
            lo = np.where(bad, lo * 0.5, lo)
        lo = np.where(g(lo) > 0, 0.0, lo)

        x = np.clip(x0, lo, hi)
        idx = np.arange(x.size)
        for _ in range(200):
            xi, li, hi_i = x[idx], lo[idx], hi[idx]
            gx = g_at(xi, idx)
            li = np.where(gx <= 0, xi, li)
            hi_i = np.where(gx >= 0, xi, hi_i)
            with np.errstate(divide="ignore", invalid="ignore"):
                x_new = xi - gx / self._pdf(xi)
            outside = ~np.isfinite(x_new) | (x_new <= li) | (x_new >= hi_i)
            mid = np.where(li > 0, np.sqrt(li * hi_i), 0.5 * hi_i)
            x_new = np.where(outside, mid, x_new)
            tol = np.maximum(self._XTOL * np.minimum(1.0, x_new), 4 * np.finfo(float).eps * x_new)
            converged = (np.abs(x_new - xi) <= tol) | (gx == 0) | (hi_i - li <= tol)
            x[idx], lo[idx], hi[idx] = x_new, li, hi_i
            idx = idx[~converged]
            if idx.size == 0:
                break
        out[active] = x
        return out.reshape(shape)


class CustomDistribution(Distribution):
    """A user-supplied law given by cdf/quantile callables and its metadata."""

    kind = "custom"

    def __init__(
        self,
        cdf: Callable,
        quantile: Callable,
        d: float,
        a: float = 1.0,
        zeta: float | None = None,
        sampler: Callable | None = None,
        spec=None,
    ):
        super().__init__(d=d, a=a, zeta=zeta, spec=spec)
        self._cdf_fn = cdf
        self._quantile_fn = quantile
        self._sampler = sampler

    def _cdf(self, x):
        return np.asarray(self._cdf_fn(x), dtype=float)

    def _quantile(self, u):
        return np.asarray(self._quantile_fn(u), dtype=float)

    def sample(self, rng, size=None):
        if self._sampler is not None:
            return self._sampler(rng, size)
        return super().sample(rng, size)


def make_distribution(spec: DistributionSpec | Mapping[str, Any]) -> Distribution:
    """Build a :class:`Distribution` from a spec or a plain mapping."""
    if not isinstance(spec, DistributionSpec):
        spec = DistributionSpec.from_mapping(spec)
    kind = _ALIASES.get(str(spec.kind).lower().replace("-", "_"))
    if kind is None:
        raise InvalidParameter(f"unknown distribution kind {spec.kind!r}; expected one of {KINDS}")
    params = dict(spec.params)

    def _check_meta(dist):
        # metadata is derived for built-ins; a conflicting value is an error
        for name in ("d", "a", "zeta"):
            given = getattr(spec, name)
            if given is None:
                continue
            have = getattr(dist, name)
            if have is None or not math.isclose(float(given), have, rel_tol=1e-12):
                raise InvalidParameter(f"{name}={given!r} is inconsistent with {kind} (expected {have!r})")
        return dist

    if kind == "exponential":
        scale = params.pop("scale", 1.0)
        _no_extra(kind, params)
        return _check_meta(Exponential(scale=scale, spec=spec))
    if kind == "weibull":
        d = spec.d if spec.d is not None else params.pop("shape", None)
        params.pop("shape", None)
        if d is None:
            raise InvalidParameter("weibull needs shape 'd'")
        scale = params.pop("scale", 1.0)
        _no_extra(kind, params)
        return _check_meta(Weibull(d, scale=scale, spec=spec))
    if kind == "maxuniform":
        if spec.d is None:
            raise InvalidParameter("maxuniform needs integer 'd'")
        _no_extra(kind, params)
        return _check_meta(MaxUniform(_positive_int("d", spec.d), spec=spec))
    if kind == "chisquared":
        if "k" not in params:
            raise InvalidParameter("chisquared needs integer degrees 'k'")
        k = _positive_int("k", params.pop("k"))
        _no_extra(kind, params)
        return _check_meta(ChiSquared(k, spec=spec))
    cdf = params.pop("cdf", None)
    quantile = params.pop("quantile", None)
    sampler = params.pop("sampler", None)
    if cdf is None or quantile is None or spec.d is None:
        raise InvalidParameter("custom distribution needs 'cdf', 'quantile' callables and 'd'")
    _no_extra(kind, params)
    return CustomDistribution(cdf, quantile, spec.d, 1.0 if spec.a is None else spec.a, spec.zeta, sampler, spec=spec)


def _no_extra(kind, params):
    if params:
        raise InvalidParameter(f"unexpected parameters for {kind}: {sorted(params)}")


def exponential(scale: float = 1.0) -> Distribution:
    return make_distribution(DistributionSpec("exponential", params={"scale": scale}))


def weibull(d: float, scale: float = 1.0) -> Distribution:
    return make_distribution(DistributionSpec("weibull", d=d, params={"scale": scale}))


def max_uniform(d: int) -> Distribution:
    return make_distribution(DistributionSpec("maxuniform", d=d))


def chi_squared(k: int) -> Distribution:
    return make_distribution(DistributionSpec("chisquared", params={"k": k}))


def custom(cdf, quantile, d, a=1.0, zeta=None, sampler=None) -> Distribution:
    return CustomDistribution(cdf, quantile, d, a, zeta, sampler)


def cdf(dist: Distribution, x):
    return dist.cdf(x)


def quantile(dist: Distribution, u):
    return dist.quantile(u)


def quantile_couple(dist: Distribution, y_exp):
    return dist.quantile_couple(y_exp)
