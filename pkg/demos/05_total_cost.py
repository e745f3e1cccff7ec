"""
Total cost: law of large numbers, variance and normal fluctuations
==================================================================

The total cost grows like ``n**(1-1/d)`` times ``pi / (d sin(pi/d))``.  For
``d > 2`` its variance grows like ``gamma(d) n**(1-2/d)`` and the centred
total is asymptotically normal.
"""
from stablematch.experiments import ExperimentConfig, run_experiment
from stablematch.distributions import DistributionSpec

lln = run_experiment(ExperimentConfig("total_cost_lln", n=100_000, reps=50, dist=DistributionSpec("weibull", d=3.0)))
print("LLN, Weibull(3):", {k: round(v, 5) for k, v in lln.metrics.items()})

chi = run_experiment(ExperimentConfig("total_cost_lln", n=20_000, reps=20, dist=DistributionSpec("chisquared", params={"k": 6})))
print("LLN, chi-squared(6) through the coupling:", {k: round(v, 5) for k, v in chi.metrics.items()})

var = run_experiment(ExperimentConfig("variance_limit", n=100_000, reps=1000, dist=DistributionSpec("weibull", d=4.0), seed=3))
m = var.metrics
print(f"Var(C)/n^(1/2) = {m['variance_scaled']:.5f}, gamma(4) = {m['reference']:.5f}, ratio {m['ratio']:.3f}")
print(f"KS distance of standardized totals to the normal law: {m['ks_normal']:.4f}")
