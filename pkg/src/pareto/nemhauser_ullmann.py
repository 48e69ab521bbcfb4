"""
Nemhauser-Ullmann sequential Pareto enumeration for knapsack.

The list after i items holds the Pareto-optimal subsets of the first i
items under (minimise weight, maximise profit). Adding item i+1 merges the
list with a copy shifted by the item, then filters. Capacity is ignored.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import EngineMismatchError, ModelError
from ..model.instance import Instance, LinearAdversarial, ObjectiveVector
from ..model.solution import Solution
from ..solutions.solution_set import HypercubeSolutionSet
from .engine import ParetoEngine, ParetoSet

logger = logging.getLogger(__name__)

# (weight, profit, mask); item i is bit n-1-i so numeric mask order is lexicographic order
Entry = Tuple[float, float, int]


def _merge(left: List[Entry], right: List[Entry]) -> List[Entry]:
    """
    Merge two weight-sorted lists, keeping entries that beat the best profit so far.

    An exact copy of the last kept (weight, profit) pair is kept too, as
    neither of the two dominates the other.
    """
    merged: List[Entry] = []
    i = j = 0
    best = -np.inf

    def key(e: Entry):
        return (e[0], -e[1], e[2])

    while i < len(left) or j < len(right):
        if j >= len(right) or (i < len(left) and key(left[i]) <= key(right[j])):
            entry = left[i]
            i += 1
        else:
            entry = right[j]
            j += 1
        if entry[1] > best or (merged and entry[:2] == merged[-1][:2]):
            merged.append(entry)
            best = entry[1]
    return merged


def nemhauser_ullmann(weights: Sequence[float], profits: Sequence[float]) -> ParetoSet:
    """
    Pareto-optimal knapsack subsets.

    Args:
        weights: Item weights (minimised)
        profits: Item profits (maximised)

    Returns:
        ParetoSet in lexicographic solution order; objective vectors are
        (weight,) with adversarial value -profit
    """
    n = len(weights)
    if n < 1 or len(profits) != n:
        raise ModelError(f"need n >= 1 items with matching profits, got {n} weights and {len(profits)} profits")
    pareto: List[Entry] = [(0.0, 0.0, 0)]
    sizes = []
    for i, (w, p) in enumerate(zip(weights, profits)):
        bit = 1 << (n - 1 - i)
        shifted = [(cw + float(w), cp + float(p), mask | bit) for cw, cp, mask in pareto]
        pareto = _merge(pareto, shifted)
        sizes.append(len(pareto))
    logger.debug("nemhauser-ullmann list sizes: %s", sizes)

    members = []
    for weight, profit, mask in sorted(pareto, key=lambda e: e[2]):
        bits = tuple((mask >> (n - 1 - i)) & 1 for i in range(n))
        members.append((Solution(bits), ObjectiveVector((weight,), -profit)))
    return ParetoSet(members)


class NemhauserUllmannEngine(ParetoEngine):
    """Applies to d = 1 hypercube instances with a linear adversarial objective (profits = -weights)."""

    def __init__(self):
        super().__init__("nu")

    def applicable(self, instance: Instance) -> bool:
        return (instance.d == 1
                and isinstance(instance.solution_set, HypercubeSolutionSet)
                and isinstance(instance.adversarial, LinearAdversarial))

    def compute(self, instance: Instance) -> ParetoSet:
        if not self.applicable(instance):
            raise EngineMismatchError(f"nemhauser-ullmann cannot handle {instance!r}")
        weights = instance.coefficients[0]
        profits = -np.asarray(instance.adversarial.weights)
        return nemhauser_ullmann(weights.tolist(), profits.tolist())
