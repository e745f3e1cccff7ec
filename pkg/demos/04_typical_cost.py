"""
The cost paid by a typical vertex
=================================

Scaled by ``n**(1/d)``, the matched cost of a uniformly chosen vertex
converges to a law with cdf ``a x**d / (1 + a x**d)``.  Its mean is
``pi / (d sin(pi/d))`` for ``d > 1``.
"""
import numpy as np

from stablematch import distributions as D
from stablematch.recursion import sample_exp_sequence, transform_sequence, typical_cost
from stablematch.stats import EcdfSample, ks_statistic
from stablematch.theory import limit_cdf_typical, moment_limit

rng = np.random.default_rng(7)
n, reps = 10_000, 2000
for law in (D.weibull(2.0), D.max_uniform(2), D.weibull(3.0)):
    scaled = np.array([
        n ** (1 / law.d) * typical_cost(transform_sequence(sample_exp_sequence(n, rng), law), rng)
        for _ in range(reps)
    ])
    ks = ks_statistic(EcdfSample(scaled), lambda x: limit_cdf_typical(law.d, x, law.a))
    print(f"{law!r:40s} KS to the limit law {ks:.4f}; mean {scaled.mean():.4f} "
          f"vs limit {moment_limit(1.0, law.d, law.a):.4f}")

# a small text histogram of the last run, Weibull(3), against the limit law
x = np.linspace(0, 4, 9)
hist, _ = np.histogram(scaled, bins=x)
print("\nbin      empirical  limit")
for lo, hi, h in zip(x[:-1], x[1:], hist):
    mass = limit_cdf_typical(3.0, hi) - limit_cdf_typical(3.0, lo)
    print(f"[{lo:.1f},{hi:.1f})  {h / reps:8.4f}  {mass:.4f}")
