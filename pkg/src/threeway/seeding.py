"""Splittable, counter-based random streams.

Every random draw in a simulation comes from a Philox generator whose key
is ``SeedSequence(master_seed, spawn_key=(trial, block, purpose, node))``.
Streams therefore depend only on *what* they are for, never on the order
in which trials or blocks are executed.

Purposes:

====  ==========================================
0     codebook of ``node`` (relay: own/double-index part)
1     message indices
2     channel (phases, then noise)
3     second superposition codebook of the relay
====  ==========================================
"""

from __future__ import annotations

from typing import Union

import numpy as np

CODEBOOK = 0
MESSAGES = 1
CHANNEL = 2
CODEBOOK_V = 3

SeedLike = Union[int, np.random.SeedSequence]


def as_seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def trial_seed(master_seed: int, trial: int) -> np.random.SeedSequence:
    """Seed of trial ``trial`` under ``master_seed``."""
    return np.random.SeedSequence(int(master_seed), spawn_key=(int(trial),))


def keyed_rng(seed: SeedLike, *key: int) -> np.random.Generator:
    """Independent generator for the sub-stream ``key`` of ``seed``."""
    ss = as_seed_sequence(seed)
    child = np.random.SeedSequence(ss.entropy, spawn_key=tuple(ss.spawn_key) + tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(child))
