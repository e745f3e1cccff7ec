"""
Greedy stable matching on a small complete bipartite graph
==========================================================

Draw a random cost matrix, run the greedy scan and confirm that nothing
blocks the result.  For small ``n`` every perfect matching can be checked,
and exactly one of them turns out to be stable.
"""
import numpy as np

from stablematch import distributions as D
from stablematch.matching import (
    Matching,
    generate_instance,
    greedy_stable_matching,
    stable_matchings_bruteforce,
    verify_stability,
)

rng = np.random.default_rng(2026)
m = generate_instance(6, D.weibull(2.0), rng)
print("cost matrix:\n", np.round(m.costs, 3))

g = greedy_stable_matching(m)
print("partner of each left vertex:", g.partner.tolist())
print("order in which left vertices were matched:", g.order.tolist())
print("matched costs in that order:", np.round(g.pair_costs[g.order], 3).tolist())
print("blocking pairs:", verify_stability(m, g))

# exhaustive check over all 720 perfect matchings
stable = stable_matchings_bruteforce(m)
print("stable matchings found by enumeration:", len(stable))
print("same as greedy:", np.array_equal(stable[0], g.partner))

# any other matching is blocked by at least one pair
other = Matching.from_partner(m, np.roll(g.partner, 1))
print("blocking pairs of a shifted matching:", verify_stability(m, other))
