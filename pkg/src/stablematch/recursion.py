"""Exponential representation of the ordered matched costs.

With Exp(1) edge costs, the k-th cheapest matched cost is
``Y_k = X_1 + ... + X_k`` where the increments are independent and
``X_k ~ Exp(rate=(n - k + 1)**2)``.  The increment is the minimum over the
``(n - k + 1)**2`` edges that are still available.  This gives the whole
matched-cost sequence in O(n) time, with no cost matrix.  Any other law
follows by pushing ``Y_k`` through the quantile coupling, which keeps the
order and hence the matching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .distributions import Distribution, Exponential, Weibull
from .errors import DomainError, InvalidParameter, RangeError, ViewError

EXP_VIEW = "exp"
WEIBULL_VIEW = "weibull"
COUPLED_VIEW = "coupled"


@dataclass(frozen=True)
class CostSequence:
    """Ordered matched costs of one instance.

    ``base`` holds the exponential-base values ``Y_1 <= ... <= Y_n`` and
    ``increments`` the ``X_k`` they were summed from.  ``values`` holds the costs
    under ``view``.  In the exponential view they are the base itself;
    otherwise they are the base pushed through the law's quantile coupling
    (``Y_k**(1/d)`` for a Weibull law).  In floating
    point, ``base`` is non-decreasing.  Two neighbours can round to the same
    double when an increment is tiny relative to the running sum.
    """

    base: np.ndarray
    increments: np.ndarray | None
    values: np.ndarray
    view: str = EXP_VIEW
    dist: Distribution | None = None

    @property
    def n(self) -> int:
        return len(self.base)


@dataclass(frozen=True)
class SegmentSplit:
    lambda_n: int
    kappa_n: int
    m_n: int
    w1: float
    w2: float
    w3: float

    @property
    def total(self) -> float:
        return math.fsum((self.w1, self.w2, self.w3))


def _rates(n: int) -> np.ndarray:
    # rate of X_k is (n - k + 1)**2 for k = 1..n
    r = np.arange(n, 0, -1, dtype=float)
    return r * r


def sample_exp_sequence(n: int, rng: np.random.Generator) -> CostSequence:
    if int(n) != n or n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n!r}")
    n = int(n)
    increments = rng.standard_exponential(n) / _rates(n)
    base = np.cumsum(increments)
    return CostSequence(base=base, increments=increments, values=base)


def transform_sequence(seq: CostSequence, dist: Distribution) -> CostSequence:
    """View an exponential-base sequence as the matched costs under ``dist``."""
    if seq.view != EXP_VIEW:
        raise ViewError(f"transform needs the exponential base view, got '{seq.view}'")
    values = np.asarray(dist.quantile_couple(seq.base), dtype=float)
    view = WEIBULL_VIEW if isinstance(dist, (Weibull, Exponential)) else COUPLED_VIEW
    return replace(seq, values=values, view=view, dist=dist)


def total_cost(seq: CostSequence) -> float:
    return math.fsum(seq.values)


def typical_cost(seq: CostSequence, rng: np.random.Generator) -> float:
    """Matched cost of a uniformly chosen vertex, i.e. ``values[U]`` with ``U`` uniform."""
    return float(seq.values[rng.integers(seq.n)])


def resample_coordinate(seq: CostSequence, k: int, rng: np.random.Generator) -> CostSequence:
    """Coupled copy with the k-th increment (1-based) replaced by a fresh draw.

    Entries below ``k`` are unchanged and every later entry shifts by the same
    amount ``X'_k - X_k``.  The result is in the exponential base view.
    """
    if seq.view != EXP_VIEW or seq.increments is None:
        raise ViewError("resampling needs the exponential base view with stored increments")
    n = seq.n
    if int(k) != k or not 1 <= k <= n:
        raise RangeError(f"k must lie in 1..{n}, got {k!r}")
    k = int(k)
    fresh = rng.standard_exponential() / float(n - k + 1) ** 2
    increments = seq.increments.copy()
    shift = fresh - increments[k - 1]
    increments[k - 1] = fresh
    base = seq.base.copy()
    base[k - 1:] += shift
    return CostSequence(base=base, increments=increments, values=base)


def default_cuts(n: int, d: float, kappa_power: float = 4.0) -> tuple[int, int]:
    """Cut points ``(lambda_n, kappa_n)`` for the three-segment split.

    ``lambda_n = ceil(n**(1/2 + alpha))`` with ``alpha = 1/(4(d+1))`` and
    ``kappa_n = ceil(log(n)**kappa_power)``, capped so that
    ``lambda_n <= n - kappa_n``.
    """
    if n < 3:
        raise DomainError(f"default cuts need n >= 3, got {n}")
    if not d > 1:
        raise DomainError(f"default cuts need d > 1, got {d}")
    alpha = 1.0 / (4.0 * (d + 1.0))
    lam = min(math.ceil(n ** (0.5 + alpha)), n)
    kappa = math.ceil(math.log(n) ** kappa_power)
    kappa = max(0, min(kappa, n - lam))
    return lam, kappa


def check_cuts(n: int, lambda_n: int, kappa_n: int) -> None:
    if int(lambda_n) != lambda_n or int(kappa_n) != kappa_n:
        raise RangeError("cut points must be integers")
    if kappa_n < 0 or not 1 <= lambda_n <= n - kappa_n:
        raise RangeError(f"need 1 <= lambda_n <= n - kappa_n, got lambda_n={lambda_n}, kappa_n={kappa_n}, n={n}")


def segment_costs(seq: CostSequence, lambda_n: int, kappa_n: int) -> SegmentSplit:
    """Split the total into cheapest (k < lambda_n), bulk and top-``kappa_n`` parts."""
    n = seq.n
    check_cuts(n, lambda_n, kappa_n)
    m = n - kappa_n
    v = seq.values
    return SegmentSplit(
        lambda_n=int(lambda_n),
        kappa_n=int(kappa_n),
        m_n=int(m),
        w1=math.fsum(v[: lambda_n - 1]),
        w2=math.fsum(v[lambda_n - 1: m]),
        w3=math.fsum(v[m:]),
    )
