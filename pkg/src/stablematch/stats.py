"""Streaming summaries and Kolmogorov-Smirnov distances."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import DegenerateSample, EmptySample, NonFinite


@dataclass(frozen=True)
class SummaryStats:
    """Welford accumulator: count, mean, sum of squared deviations, extremes."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    min: float = math.inf
    max: float = -math.inf

    @property
    def variance(self) -> float:
        """Sample variance; NaN while fewer than two values have been seen."""
        if self.count < 2:
            return math.nan
        return self.m2 / (self.count - 1)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.count)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "mean": self.mean,
            "variance": self.variance,
            "min": self.min,
            "max": self.max,
        }


def stream_update(s: SummaryStats, x: float) -> SummaryStats:
    x = float(x)
    if not math.isfinite(x):
        raise NonFinite(f"cannot accumulate non-finite value {x!r}")
    count = s.count + 1
    delta = x - s.mean
    mean = s.mean + delta / count
    m2 = s.m2 + delta * (x - mean)
    return SummaryStats(count, mean, m2, min(s.min, x), max(s.max, x))


def merge(a: SummaryStats, b: SummaryStats) -> SummaryStats:
    """Combine two accumulators with the pairwise update of the partial moments."""
    if a.count == 0:
        return b
    if b.count == 0:
        return a
    count = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * b.count / count
    m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / count
    return SummaryStats(count, mean, m2, min(a.min, b.min), max(a.max, b.max))


def summarize(values: Iterable[float]) -> SummaryStats:
    s = SummaryStats()
    for x in values:
        s = stream_update(s, x)
    return s


@dataclass(frozen=True)
class EcdfSample:
    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float).ravel())
        object.__setattr__(self, "values", v)

    @property
    def count(self) -> int:
        return len(self.values)

    def ecdf(self, x):
        """Right-continuous empirical cdf."""
        return np.searchsorted(self.values, x, side="right") / self.count


def ks_statistic(sample, cdf: Callable) -> float:
    """One-sample KS distance ``sup |F_n - F|`` evaluated at the order statistics."""
    sample = sample if isinstance(sample, EcdfSample) else EcdfSample(sample)
    n = sample.count
    if n == 0:
        raise EmptySample("KS statistic of an empty sample")
    f = np.asarray(cdf(sample.values), dtype=float)
    i = np.arange(1, n + 1)
    upper = np.abs(i / n - f)
    lower = np.abs((i - 1) / n - f)
    return float(max(upper.max(), lower.max()))


def ks_two_sample(a, b) -> float:
    """Two-sample KS distance computed on the merged sorted grid."""
    a = a if isinstance(a, EcdfSample) else EcdfSample(a)
    b = b if isinstance(b, EcdfSample) else EcdfSample(b)
    if a.count == 0 or b.count == 0:
        raise EmptySample("two-sample KS needs two non-empty samples")
    grid = np.concatenate([a.values, b.values])
    return float(np.max(np.abs(a.ecdf(grid) - b.ecdf(grid))))


def standardize(sample) -> EcdfSample:
    """Centre and scale to mean 0 and population variance 1."""
    sample = sample if isinstance(sample, EcdfSample) else EcdfSample(sample)
    if sample.count < 2:
        raise DegenerateSample("standardizing needs at least two values")
    v = sample.values
    mean = math.fsum(v) / len(v)
    sd = float(np.std(v - mean))
    if not sd > 0:
        raise DegenerateSample("sample has zero variance")
    return EcdfSample((v - mean) / sd)


def normal_cdf(x):
    """Standard normal cdf via the complementary error function."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * _erfc(-x / math.sqrt(2.0))
    return out[()] if out.ndim == 0 else out


_erfc = np.vectorize(math.erfc, otypes=[float])
