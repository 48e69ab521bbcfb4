"""
Alternative realizations that keep the revealed linear combinations.

Reconstruction reads V^k on the certificate rows only through V^k_J · q for
the columns q of a few integer matrices. Moving V^k_J along the null space
of those columns changes the coefficients but not what reconstruction sees.
"""

import logging
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from ..model.instance import Instance
from ..model.solution import IndexTuple
from .linalg import rational_null_space
from .shift import ShiftData
from .zero_preserving import ZPBlock

logger = logging.getLogger(__name__)

Constraint = Tuple[IndexTuple, np.ndarray]


def certificate_constraints(shift: ShiftData) -> Dict[int, Constraint]:
    """Objective k keeps V^k_J · q for every column q of Q_{k+1}."""
    return {k: (shift.J, shift.q(k + 1)) for k in range(shift.d)}


def zp_constraints(blocks: Sequence[ZPBlock]) -> Dict[int, Constraint]:
    """Objective k keeps V^k on I*_k against the columns of [P_k | Q_k]."""
    return {block.k: (block.rows, block.revealed) for block in blocks}


def _step_range(values: np.ndarray, direction: np.ndarray) -> Tuple[float, float]:
    """Largest interval of alpha with values + alpha * direction inside [-1, 1]."""
    lo, hi = -np.inf, np.inf
    for v, w in zip(values, direction):
        if w > 0:
            lo, hi = max(lo, (-1 - v) / w), min(hi, (1 - v) / w)
        elif w < 0:
            lo, hi = max(lo, (1 - v) / w), min(hi, (-1 - v) / w)
    return lo, hi


def alternative_realization(instance: Instance, constraints: Mapping[int, Constraint],
                            rng: np.random.Generator, scale: float = 0.5) -> Instance:
    """
    Instance W with W^k_J · q = V^k_J · q for every constrained (k, J, q).

    Coefficients outside the constrained rows are untouched and W stays
    inside [-1, 1]. Objectives without a free direction are left as they are.

    Args:
        instance: The realization V
        constraints: Objective index -> (rows J, integer matrix of columns q)
        rng: Random generator for the direction and step
        scale: Fraction of the feasible step actually taken

    Returns:
        A new instance with the moved coefficients
    """
    coefficients = np.array(instance.coefficients, dtype=np.float64)
    for k, (rows, matrix) in constraints.items():
        rows = list(rows)
        if not rows:
            continue
        matrix = np.asarray(matrix, dtype=np.int64).reshape(len(rows), -1)
        basis = rational_null_space(matrix.T)
        if not basis:
            logger.debug("objective %d has no free direction on %d rows", k, len(rows))
            continue
        mix = rng.standard_normal(len(basis))
        direction = np.array([[float(v) for v in vec] for vec in basis]).T @ mix
        norm = np.max(np.abs(direction))
        if norm == 0:
            continue
        direction /= norm
        lo, hi = _step_range(coefficients[k, rows], direction)
        alpha = hi if (hi > -lo) else lo
        coefficients[k, rows] += scale * alpha * direction
    np.clip(coefficients, -1.0, 1.0, out=coefficients)
    return instance.with_coefficients(coefficients)
