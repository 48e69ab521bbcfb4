"""
Deterministic seed derivation.

Every trial gets its own generator whose seed is a splitmix64 hash of
(master seed, cell index, trial index, attempt). Cells and trials can
therefore run in any order, on any number of workers, and still draw the
same numbers.
"""

from typing import Iterable

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One splitmix64 output for the given 64-bit state."""
    z = (state + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *path: int) -> int:
    """Fold the path components into the master seed, one splitmix64 step each."""
    state = splitmix64(int(master) & MASK64)
    for component in path:
        state = splitmix64(state ^ (int(component) & MASK64))
    return state


def trial_rng(master: int, *path: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master, *path)))


def derive_seeds(master: int, indices: Iterable[int]) -> list:
    return [derive_seed(master, i) for i in indices]
