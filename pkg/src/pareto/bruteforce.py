"""
Brute-force Pareto filter over an enumerated solution set.

Points are swept in lexicographic order of their objective vectors. The
first remaining point cannot be dominated by anything after it, so it is
Pareto-optimal; every point it dominates is dropped. Exact duplicates
survive together, as neither dominates the other.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List

import numpy as np

from ..errors import EnumerationCapError
from ..model.instance import Instance
from ..solutions.solution_set import DEFAULT_ENUMERATION_CAP
from .engine import ParetoEngine, ParetoSet

logger = logging.getLogger(__name__)


def pareto_mask(points: np.ndarray) -> np.ndarray:
    """
    Boolean mask of the non-dominated rows of an (m, k) array, all coordinates minimised.

    Args:
        points: One objective vector per row

    Returns:
        mask with mask[i] True iff no row dominates row i
    """
    points = np.asarray(points, dtype=np.float64)
    m = points.shape[0]
    mask = np.zeros(m, dtype=bool)
    if m == 0:
        return mask
    order = np.lexsort(points.T[::-1])
    remaining = order
    while remaining.size:
        head = remaining[0]
        mask[head] = True
        rest = remaining[1:]
        block = points[rest]
        p = points[head]
        dominated = np.all(block >= p, axis=1) & np.any(block > p, axis=1)
        remaining = rest[~dominated]
    return mask


def _objective_matrix(instance: Instance) -> np.ndarray:
    ev = instance.evaluation
    return np.column_stack([ev.linear, ev.adversarial])


class BruteForceEngine(ParetoEngine):
    """
    Definitional Pareto filter.

    With workers > 1 the solution set is split into contiguous chunks whose
    local fronts are merged; the result does not depend on the worker count.
    """

    def __init__(self, cap: int = DEFAULT_ENUMERATION_CAP, workers: int = 1):
        super().__init__("bruteforce")
        self.cap = cap
        self.workers = max(1, int(workers))

    def applicable(self, instance: Instance) -> bool:
        """Any instance; compute raises EnumerationCapError above the cap."""
        return True

    def _front_rows(self, points: np.ndarray) -> np.ndarray:
        m = points.shape[0]
        if self.workers == 1 or m < 2 * self.workers:
            return np.flatnonzero(pareto_mask(points))
        chunks: List[np.ndarray] = np.array_split(np.arange(m), self.workers)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            local = list(pool.map(lambda rows: rows[pareto_mask(points[rows])], chunks))
        candidates = np.sort(np.concatenate(local))
        return candidates[pareto_mask(points[candidates])]

    def compute(self, instance: Instance) -> ParetoSet:
        size = len(instance.solution_set)
        if size > self.cap:
            raise EnumerationCapError(size, self.cap)
        points = _objective_matrix(instance)
        rows = self._front_rows(points)
        ev = instance.evaluation
        logger.debug("bruteforce: %d of %d solutions are Pareto-optimal", rows.size, size)
        return ParetoSet([(ev.solution(int(r)), ev.objective_vector(int(r))) for r in np.sort(rows)])


def pareto_bruteforce(instance: Instance, cap: int = DEFAULT_ENUMERATION_CAP, workers: int = 1) -> ParetoSet:
    return BruteForceEngine(cap=cap, workers=workers).compute(instance)
