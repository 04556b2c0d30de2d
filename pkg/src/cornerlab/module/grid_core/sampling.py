"""
Seeded randomness.

Every random draw in CornerLab goes through numpy's PCG64 bit generator.
Seeds are split with SeedSequence.spawn, so restart k of a run seeded with s
always sees the same stream regardless of thread count.
"""

from typing import List

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """A PCG64 generator for the given seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    """Independent child generators derived from one seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]
