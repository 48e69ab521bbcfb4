"""
Reconstruction of x from a certificate, a shift vector and a box.

The loop mirrors witness() but only sees the revealed bits A on J and the
corner b of the box containing V(x - u): round t keeps the solutions that
agree with a^(t) on J and satisfy V^{1..t}(z - u) <= b_{1..t}.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..errors import ModelError
from ..model.grid import EpsilonGrid, epsilon_box
from ..model.instance import Instance
from ..model.solution import Solution

logger = logging.getLogger(__name__)


def _as_bits(u, n: int) -> np.ndarray:
    bits = u.as_array() if isinstance(u, Solution) else np.asarray(u, dtype=np.int8)
    if bits.shape != (n,):
        raise ModelError(f"shift vector must have length {n}, got shape {bits.shape}")
    return bits


def _in_box(values: np.ndarray, corner: np.ndarray, eps: float) -> bool:
    return bool(np.all(values > corner) and np.all(values <= corner + eps))


def shifted_box(instance: Instance, x: Solution, u, eps: float) -> np.ndarray:
    """Corner of the eps-box containing V(x - u)."""
    ev = instance.evaluation
    row = ev.row_of(x)
    values = ev.shifted_linear(_as_bits(u, instance.n))[row]
    return epsilon_box(EpsilonGrid(eps, instance.d, instance.n), values)


def witness_reconstruct(instance: Instance, J: Sequence[int], A, B, u,
                        eps: Optional[float] = None) -> Optional[Solution]:
    """
    Rebuild x from (J, A, B, u).

    Args:
        instance: The instance the certificate was taken from
        J: Index tuple containing the certificate's I*
        A: |J| x (d+1) bit matrix, column c is a^(d-c) restricted to J
        B: Box corner b, one entry per linear objective
        u: Shift vector of length n
        eps: Box width; when given, a result whose V(z - u) is not in the
            box (b, b + eps] is rejected

    Returns:
        The reconstructed solution, or None when no round succeeds
    """
    ev = instance.evaluation
    d = instance.d
    J = list(J)
    A = np.asarray(A, dtype=np.int8).reshape(len(J), -1)
    if A.shape[1] != d + 1:
        raise ModelError(f"certificate matrix needs d + 1 = {d + 1} columns, got {A.shape[1]}")
    b = np.asarray(B, dtype=np.float64)
    shifted = ev.shifted_linear(_as_bits(u, instance.n))

    # in_a[t]: rows agreeing with a^(t) on J
    in_a: List[np.ndarray] = [None] * (d + 1)
    for c in range(d + 1):
        t = d - c
        if J:
            in_a[t] = np.all(ev.bits[:, J] == A[:, c], axis=1)
        else:
            in_a[t] = np.ones(ev.m, dtype=bool)

    def union_below(t: int) -> np.ndarray:
        mask = np.zeros(ev.m, dtype=bool)
        for s in range(t):
            mask |= in_a[s]
        return mask

    R = union_below(d + 1)
    for t in range(d, -1, -1):
        C = R & in_a[t]
        if t:
            C &= np.all(shifted[:, :t] <= b[:t], axis=1)
        if C.any():
            w = ev.argmin(C, t)
            if t == 0:
                if eps is not None and not _in_box(shifted[w], b, eps):
                    logger.debug("reconstructed solution lies outside the claimed box")
                    return None
                return ev.solution(w)
            key = ev.key(t)
            R = R & union_below(t) & (key < key[w])
        else:
            R = R & union_below(t)
    logger.debug("reconstruction returned the sentinel")
    return None
