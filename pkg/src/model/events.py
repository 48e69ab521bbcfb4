"""
The good events OK and OKZ, minimum gaps and working epsilons.

OK(eps) holds when every pair of distinct solutions is separated by at
least eps in every linear objective and every coefficient row has an entry
of absolute value below 1. OKZ(eps) asks the separation only for pairs that
differ inside the objective's own block P_k.
"""

import logging
from typing import Sequence

import numpy as np

from ..errors import ModelError
from .grid import eps_below
from .instance import Instance
from .solution import IndexTuple

logger = logging.getLogger(__name__)

# Pair scans fall back to all pairs in chunks of this many rows
_PAIR_CHUNK = 512


def validate_partition(partition: Sequence[Sequence[int]], n: int, d: int) -> tuple:
    """Check that partition is d disjoint nonempty blocks covering range(n)."""
    blocks = tuple(tuple(sorted(int(i) for i in block)) for block in partition)
    if len(blocks) != d:
        raise ModelError(f"partition has {len(blocks)} blocks, expected d={d}")
    seen = set()
    for block in blocks:
        if not block:
            raise ModelError("partition blocks must be nonempty")
        for i in block:
            if i < 0 or i >= n:
                raise ModelError(f"partition index {i} outside range(0, {n})")
            if i in seen:
                raise ModelError(f"index {i} appears in two partition blocks")
            seen.add(i)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise ModelError(f"partition does not cover indices {missing}")
    return blocks


def _sorted_min_gap(values: np.ndarray) -> float:
    if values.size < 2:
        return float('inf')
    return float(np.min(np.diff(np.sort(values))))


def min_pairwise_gap(instance: Instance) -> float:
    """Minimum of |V^k(y - z)| over k and distinct pairs y, z of S."""
    ev = instance.evaluation
    cached = ev.cache.get('min_gap')
    if cached is not None:
        return cached
    gap = min((_sorted_min_gap(ev.linear[:, k]) for k in range(instance.d)), default=float('inf'))
    ev.cache['min_gap'] = gap
    return gap


def _pattern_gap(ev, k: int, block: IndexTuple) -> float:
    patterns = ev.bits[:, list(block)]
    values = ev.linear[:, k]
    coeffs = ev.instance.coefficients[k]
    outside = np.ones(coeffs.shape[0], dtype=bool)
    outside[list(block)] = False
    if not np.any(coeffs[outside] != 0.0):
        # V^k only sees P_k, so one value per distinct pattern
        _, first = np.unique(patterns, axis=0, return_index=True)
        return _sorted_min_gap(values[first])

    best = float('inf')
    m = ev.m
    for start in range(0, m, _PAIR_CHUNK):
        stop = min(start + _PAIR_CHUNK, m)
        differ = np.any(patterns[start:stop, None, :] != patterns[None, :, :], axis=2)
        gaps = np.abs(values[start:stop, None] - values[None, :])
        if np.any(differ):
            best = min(best, float(np.min(gaps[differ])))
    return best


def min_partition_gap(instance: Instance, partition: Sequence[Sequence[int]]) -> float:
    """Minimum of |V^k(y - z)| over k and pairs with y|_{P_k} != z|_{P_k}."""
    blocks = validate_partition(partition, instance.n, instance.d)
    ev = instance.evaluation
    key = ('min_partition_gap', blocks)
    if key in ev.cache:
        return ev.cache[key]
    gap = min(_pattern_gap(ev, k, block) for k, block in enumerate(blocks))
    ev.cache[key] = gap
    return gap


def _coefficient_condition(instance: Instance) -> bool:
    return bool(np.all(np.any(np.abs(instance.coefficients) < 1.0, axis=1)))


def ok_event(instance: Instance, eps: float) -> bool:
    if not _coefficient_condition(instance):
        return False
    return min_pairwise_gap(instance) >= eps


def okz_event(instance: Instance, partition: Sequence[Sequence[int]], eps: float) -> bool:
    return min_partition_gap(instance, partition) >= eps


def working_epsilon(instance: Instance) -> float:
    """Largest 2^-q strictly below half the minimum pairwise gap."""
    return eps_below(min_pairwise_gap(instance) / 2.0)


def working_epsilon_zp(instance: Instance, partition: Sequence[Sequence[int]]) -> float:
    return eps_below(min_partition_gap(instance, partition) / 2.0)


def has_exact_ties(instance: Instance, partition=None) -> bool:
    """
    True when two distinct solutions collide exactly in some linear objective.

    With a partition only collisions between solutions that differ on the
    objective's block count.
    """
    gap = min_pairwise_gap(instance) if partition is None else min_partition_gap(instance, partition)
    if gap == 0.0:
        logger.debug("exact tie detected in %r", instance)
        return True
    return False
