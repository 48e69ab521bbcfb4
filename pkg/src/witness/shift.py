"""
Shift vectors and the Q_k matrices of revealed linear combinations.

With u = u*(J, A) the bits of every column of A minus u are in {-1, 0, 1}
and the columns p^(t) = a^(t) - u|_J describe exactly which combinations of
V^k restricted to J the reconstruction reads.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import ModelError
from ..model.solution import IndexTuple, Solution


def shift_vector(I_star: Sequence[int], A, n: int, i_star: Optional[int] = None) -> Solution:
    """
    u*(I*, A): complement of x at i*, x elsewhere on I*, zero outside I*.

    x|_{I*} is read from the last column of A, so u* depends on (I*, A) only.

    Args:
        I_star: Certificate index tuple
        A: |I*| x (d+1) bit matrix
        n: Solution length
        i_star: Flipped position; defaults to the last entry of I_star

    Returns:
        The shift vector
    """
    I_star = tuple(I_star)
    A = np.asarray(A, dtype=np.int8).reshape(len(I_star), -1)
    if i_star is None:
        i_star = I_star[-1]
    if i_star not in I_star:
        raise ModelError(f"i* = {i_star} is not part of I*")
    bits = [0] * n
    for row, i in enumerate(I_star):
        value = int(A[row, -1])
        bits[i] = 1 - value if i == i_star else value
    return Solution(tuple(bits))


@dataclass(frozen=True)
class ShiftData:
    """
    p^(t) columns and Q_k matrices for one certificate.

    p_vectors has one column per t in the order d, ..., 0;
    q_matrices[k-1] is Q_k for k = 1..d.
    """
    J: IndexTuple
    u: Solution
    p_vectors: np.ndarray
    q_matrices: Tuple[np.ndarray, ...]

    @property
    def d(self) -> int:
        return self.p_vectors.shape[1] - 1

    def p(self, t: int) -> np.ndarray:
        return self.p_vectors[:, self.d - t]

    def q(self, k: int) -> np.ndarray:
        return self.q_matrices[k - 1]

    def q_prime_block(self, k: int) -> np.ndarray:
        """[Q_k | p^(0)]."""
        return np.column_stack([self.q(k), self.p(0)])


def q_matrix(p_vectors: np.ndarray, k: int) -> np.ndarray:
    """Q_k = [p^(d), ..., p^(k), p^(k-2) - p^(k-1), ..., p^(0) - p^(k-1)]."""
    d = p_vectors.shape[1] - 1

    def p(t: int) -> np.ndarray:
        return p_vectors[:, d - t]

    columns = [p(t) for t in range(d, k - 1, -1)]
    columns += [p(t) - p(k - 1) for t in range(k - 2, -1, -1)]
    return np.column_stack(columns).astype(np.int64)


def build_qk(J: Sequence[int], A, u) -> ShiftData:
    """
    p^(t) = a^(t) - u|_J and Q_1..Q_d.

    Args:
        J: Index tuple
        A: |J| x (d+1) bit matrix
        u: Shift vector of length n (Solution or bit sequence)
    """
    J = tuple(J)
    A = np.asarray(A, dtype=np.int64).reshape(len(J), -1)
    u_sol = u if isinstance(u, Solution) else Solution.from_array(u)
    u_J = np.asarray(u_sol.restrict(J), dtype=np.int64)
    p_vectors = A - u_J[:, None]
    d = A.shape[1] - 1
    if d < 1:
        raise ModelError("certificate matrix needs at least two columns")
    q_matrices = tuple(q_matrix(p_vectors, k) for k in range(1, d + 1))
    return ShiftData(J, u_sol, p_vectors, q_matrices)


def assemble_q_prime(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """Block-diagonal matrix of the per-objective blocks."""
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for block in blocks:
        out[r:r + block.shape[0], c:c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return out


def q_prime(shift: ShiftData) -> np.ndarray:
    """Q' = diag([Q_1 | p^(0)], ..., [Q_d | p^(0)]) for a single certificate."""
    return assemble_q_prime([shift.q_prime_block(k) for k in range(1, shift.d + 1)])
