"""Direct engine: explicit cost matrices and the greedy stable matching.

Vertices are 0-based.  ``costs[v, w]`` is the cost of the edge between left
vertex ``v`` and right vertex ``w``.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distributions import Distribution
from .errors import InvalidParameter, ResourceError, ShapeError

DIRECT_ENGINE_CAP = 5000


@dataclass(frozen=True)
class CostMatrix:
    costs: np.ndarray

    def __post_init__(self):
        costs = np.asarray(self.costs, dtype=float)
        if costs.ndim != 2 or costs.shape[0] != costs.shape[1] or costs.shape[0] < 1:
            raise ShapeError(f"cost matrix must be square and non-empty, got shape {costs.shape}")
        if not np.all(np.isfinite(costs)) or np.any(costs < 0):
            raise InvalidParameter("costs must be finite and non-negative")
        object.__setattr__(self, "costs", costs)

    @property
    def n(self) -> int:
        return self.costs.shape[0]


@dataclass(frozen=True)
class Matching:
    """A perfect matching.

    ``partner[v]`` is the right vertex matched to ``v``; ``pair_costs[v]`` is
    the cost of that edge.  ``order`` lists left vertices in the order the
    greedy scan added them (empty when the matching did not come from greedy).
    """

    partner: np.ndarray
    pair_costs: np.ndarray
    total: float
    order: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.partner)

    @classmethod
    def from_partner(cls, m: CostMatrix, partner) -> "Matching":
        partner = np.asarray(partner, dtype=np.intp)
        if partner.shape != (m.n,):
            raise ShapeError(f"matching has length {partner.shape}, instance has n={m.n}")
        if not np.array_equal(np.sort(partner), np.arange(m.n)):
            raise InvalidParameter("partner must be a permutation of 0..n-1")
        pair_costs = m.costs[np.arange(m.n), partner]
        return cls(partner, pair_costs, math.fsum(pair_costs))


def generate_instance(n: int, dist: Distribution, rng: np.random.Generator, cap: int = DIRECT_ENGINE_CAP) -> CostMatrix:
    """``n x n`` i.i.d. edge costs drawn from ``dist``."""
    if int(n) != n or n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if n > cap:
        raise ResourceError(f"n={n} exceeds the direct-engine cap of {cap}")
    costs = np.asarray(dist.sample(rng, (n, n)), dtype=float).reshape(n, n)
    return CostMatrix(costs)


def greedy_stable_matching(m: CostMatrix) -> Matching:
    """Repeatedly match the globally cheapest edge whose endpoints are both free.

    Edges are visited in one pass over a stable argsort of the flattened
    matrix, so equal costs are resolved by (row, column) order.
    """
    n = m.n
    flat = m.costs.ravel()
    order = np.argsort(flat, kind="stable")
    rows, cols = np.divmod(order, n)
    left_used = bytearray(n)
    right_used = bytearray(n)
    partner = np.empty(n, dtype=np.intp)
    added = np.empty(n, dtype=np.intp)
    count = 0
    for v, w in zip(rows.tolist(), cols.tolist()):
        if left_used[v] or right_used[w]:
            continue
        left_used[v] = 1
        right_used[w] = 1
        partner[v] = w
        added[count] = v
        count += 1
        if count == n:
            break
    pair_costs = m.costs[np.arange(n), partner]
    return Matching(partner, pair_costs, math.fsum(pair_costs), added)


def verify_stability(m: CostMatrix, match: Matching) -> list[tuple[int, int]]:
    """All pairs ``(v, w)`` with ``costs[v, w] < min(c(v), c(w))``; empty iff stable."""
    partner = np.asarray(match.partner)
    if partner.shape != (m.n,):
        raise ShapeError(f"matching has length {partner.shape[0] if partner.ndim else 0}, instance has n={m.n}")
    n = m.n
    c_left = m.costs[np.arange(n), partner]
    c_right = np.empty(n)
    c_right[partner] = c_left
    blocking = m.costs < np.minimum(c_left[:, None], c_right[None, :])
    v, w = np.nonzero(blocking)
    return list(zip(v.tolist(), w.tolist()))


def sorted_matched_costs(match: Matching) -> np.ndarray:
    return np.sort(np.asarray(match.pair_costs, dtype=float))


def stable_matchings_bruteforce(m: CostMatrix, max_n: int = 8) -> list[np.ndarray]:
    """Every stable perfect matching, found by checking all ``n!`` permutations.

    Reference oracle for small instances; independent of the greedy scan.
    """
    n = m.n
    if n > max_n:
        raise ResourceError(f"exhaustive enumeration limited to n <= {max_n}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    c_left = m.costs[np.arange(n)[None, :], perms]
    c_right = np.empty_like(c_left)
    np.put_along_axis(c_right, perms, c_left, axis=1)
    threshold = np.minimum(c_left[:, :, None], c_right[:, None, :])
    stable = ~np.any(m.costs[None, :, :] < threshold, axis=(1, 2))
    return [p for p in perms[stable]]


def save_instance_csv(path, m: CostMatrix) -> None:
    """Write ``n`` on the first line, then ``n`` rows of ``n`` costs."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([m.n])
        for row in m.costs:
            writer.writerow([format(float(x), ".17g") for x in row])


def load_instance_csv(path) -> CostMatrix:
    with open(Path(path), newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ShapeError(f"{path}: empty instance file")
    n = int(rows[0][0])
    body = rows[1:]
    if len(body) != n or any(len(r) != n for r in body):
        raise ShapeError(f"{path}: expected {n} rows of {n} costs")
    return CostMatrix(np.array([[float(x) for x in r] for r in body]))
