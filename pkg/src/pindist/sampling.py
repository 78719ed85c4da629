"""Seeded sampling helpers shared by the sweep and CLI layers.

Parallel sweeps never share a stream: each task derives its own generator
from (master seed, task index) through task_rng, so results are independent
of worker count and scheduling.
"""

from __future__ import annotations

import hashlib
import random


def task_rng(master_seed: int, task_index: int) -> random.Random:
    """Independent stream for one task.

    Mixing function: the first 8 bytes of SHA-256("<seed>:<index>"), read
    big-endian, seed a fresh Mersenne Twister.
    """
    digest = hashlib.sha256(f"{master_seed}:{task_index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample_without_replacement(population: int, k: int, rng: random.Random) -> list[int]:
    """k distinct draws from range(population), uniform over k-subsets.

    Partial Fisher-Yates shuffle over a virtual array; only touched slots
    are materialized, so large populations cost O(k) space.
    """
    if not 0 <= k <= population:
        raise ValueError(f"cannot draw {k} distinct values from {population}")
    swapped: dict[int, int] = {}
    out = []
    for i in range(k):
        j = rng.randrange(i, population)
        vi = swapped.get(i, i)
        vj = swapped.get(j, j)
        swapped[i], swapped[j] = vj, vi
        out.append(vj)
    return out
