"""
Exact rank and null space of small integer matrices.

Certificate matrices have entries in {-2, ..., 2}, so exact elimination over
Fractions is cheap and needs no floating-point rank tolerance.
"""

from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ..errors import ModelError


def _as_fraction_rows(matrix) -> Tuple[List[List[Fraction]], int]:
    array = np.asarray(matrix)
    if array.ndim != 2:
        raise ModelError(f"expected a 2-d matrix, got shape {array.shape}")
    if array.size and not np.all(array == np.round(array)):
        raise ModelError("exact elimination needs an integer matrix")
    return [[Fraction(int(v)) for v in row] for row in array.tolist()], array.shape[1]


def _row_reduce(matrix) -> Tuple[List[List[Fraction]], List[int], int]:
    """Reduced row echelon form, pivot columns and column count."""
    rows, cols = _as_fraction_rows(matrix)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots, cols


def integer_rank(matrix) -> int:
    return len(_row_reduce(matrix)[1])


def rank_full(matrix) -> bool:
    """True when the rank equals min(rows, columns)."""
    array = np.asarray(matrix)
    return integer_rank(array) == min(array.shape)


def columns_independent(matrix) -> bool:
    array = np.asarray(matrix)
    return integer_rank(array) == array.shape[1]


def rational_null_space(matrix) -> List[List[Fraction]]:
    """
    Basis of {w : M w = 0} over the rationals.

    Args:
        matrix: Integer matrix M of shape (r, c)

    Returns:
        List of basis vectors, each a list of c Fractions
    """
    rows, pivots, cols = _row_reduce(matrix)
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        w = [Fraction(0)] * cols
        w[free] = Fraction(1)
        for row_index, c in enumerate(pivots):
            w[c] = -rows[row_index][free]
        basis.append(w)
    return basis
