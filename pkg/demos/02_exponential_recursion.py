"""
Ordered matched costs without a cost matrix
===========================================

With Exp(1) edge costs the sorted matched costs satisfy
``Y_k = Y_{k-1} + Exp(rate (n-k+1)**2)``.  This script compares the direct
engine (explicit matrix plus greedy) with that recursion by two-sample
Kolmogorov-Smirnov distances.
"""
import math

import numpy as np

from stablematch import distributions as D
from stablematch.matching import generate_instance, greedy_stable_matching
from stablematch.recursion import sample_exp_sequence, total_cost
from stablematch.rng import stream
from stablematch.stats import ks_two_sample
from stablematch.theory import mean_sequence

n, reps = 30, 2000
direct, rec = [], []
for r in range(reps):
    costs = np.sort(greedy_stable_matching(generate_instance(n, D.exponential(), stream(5, r, 0))).pair_costs)
    seq = sample_exp_sequence(n, stream(5, r, 1))
    direct.append((costs[0], math.fsum(costs)))
    rec.append((seq.base[0], total_cost(seq)))
direct, rec = np.array(direct), np.array(rec)

print(f"KS distance for the cheapest matched cost: {ks_two_sample(direct[:, 0], rec[:, 0]):.4f}")
print(f"KS distance for the total cost:            {ks_two_sample(direct[:, 1], rec[:, 1]):.4f}")
print(f"mean total, direct {direct[:, 1].mean():.4f} vs recursion {rec[:, 1].mean():.4f}")
print(f"exact mean total: {math.fsum(mean_sequence(n)):.4f}")

# the recursion scales to sizes far beyond a dense matrix
big = sample_exp_sequence(10 ** 6, np.random.default_rng(1))
print(f"n = 10**6: Y_n = {big.base[-1]:.4f}; E Y_n = {mean_sequence(10 ** 6)[-1]:.6f} < pi**2/6 = {math.pi ** 2 / 6:.6f}")
