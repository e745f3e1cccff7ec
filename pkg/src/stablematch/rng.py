"""Counter-based random streams.

Every replication gets its own Philox generator keyed by ``(seed, rep, *tags)``,
so a replication's draws do not depend on which thread ran it or in which order.
"""
from __future__ import annotations

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent Philox stream for ``seed`` and a spawn key such as ``(rep,)``."""
    ss = np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None or isinstance(rng, (int, np.integer)):
        return stream(0 if rng is None else int(rng))
    raise TypeError(f"expected a numpy Generator or integer seed, got {type(rng).__name__}")
