"""
Witness procedure for zero-preserving perturbations.

Objective k only sees the block P_k of a partition of the positions. The
procedure works on an active objective list K. A round finds the minimiser
x^(r,t) of the next objective among solutions strictly better than x in the
first t active objectives; objectives whose block already agrees with x are
collected in K_EQ. If K_EQ is nonempty, the call ends: the blocks of K_EQ
are fixed to x and a new call starts with the remaining objectives. Once
no objective is left, the solutions that agree with x on every block and
on I are exactly {x}.

Objective numbers are 0-based (0..d-1); call numbers r start at 1.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ModelError, WitnessPreconditionError
from ..model.events import min_partition_gap, validate_partition
from ..model.instance import Instance
from ..model.solution import IndexTuple, Solution, first_free_index, tuple_intersect
from .linalg import columns_independent
from .reconstruct import _as_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZPRound:
    r: int
    t: int
    K: Tuple[int, ...]
    winner_found: bool
    vector: Solution
    K_eq: Tuple[int, ...]
    added: IndexTuple

    def to_dict(self) -> Dict[str, Any]:
        return {
            'r': self.r, 't': self.t, 'K': list(self.K), 'winner_found': self.winner_found,
            'vector': str(self.vector), 'K_eq': list(self.K_eq), 'added': list(self.added),
        }


@dataclass(frozen=True)
class ZPBookkeeping:
    """
    r_k per objective and t_r per call; everything else follows.

    K of call 1 is every objective; K of call r+1 drops the objectives with
    r_k = r. d'_r = |K_r|.
    """
    r_k: Tuple[int, ...]
    t_r: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.r_k)

    @property
    def calls(self) -> int:
        """Number of calls with at least one active objective."""
        return len(self.t_r)

    def K(self, r: int) -> Tuple[int, ...]:
        return tuple(k for k in range(self.d) if self.r_k[k] >= r)

    def d_prime(self, r: int) -> int:
        return len(self.K(r))

    def column_labels(self) -> Tuple[Tuple[int, int], ...]:
        """(r, t) of every certificate column, call by call, t descending."""
        labels = []
        for r in range(1, self.calls + 1):
            for t in range(self.d_prime(r), self.t_r[r - 1] - 1, -1):
                labels.append((r, t))
        return tuple(labels)

    def to_dict(self) -> Dict[str, Any]:
        return {'r_k': list(self.r_k), 't_r': list(self.t_r)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ZPBookkeeping':
        return cls(tuple(int(v) for v in data['r_k']), tuple(int(v) for v in data['t_r']))


@dataclass(frozen=True)
class ZPCertificate:
    """
    Index tuple, revealed vectors a^(r,t) and bookkeeping of one run.

    i_stars[k] is the smallest index of P_k not used by the run; I_star is
    the run's tuple followed by i_stars.
    """
    I_star: IndexTuple
    columns: Tuple[Solution, ...]
    bookkeeping: ZPBookkeeping
    i_stars: IndexTuple
    history: Tuple[ZPRound, ...] = field(default=(), compare=False)

    @property
    def x(self) -> Solution:
        return self.columns[-1]

    def restricted(self) -> np.ndarray:
        """|I*| x columns bit matrix."""
        return np.array([[col.bits[i] for col in self.columns] for i in self.I_star],
                        dtype=np.int8).reshape(len(self.I_star), len(self.columns))

    def column_index(self, r: int, t: int) -> int:
        return self.bookkeeping.column_labels().index((r, t))

    def recursed(self) -> bool:
        """True when some call ended with K_EQ nonempty at t > 0."""
        return any(rnd.K_eq and rnd.t > 0 for rnd in self.history)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'zero-preserving',
            'I_star': list(self.I_star),
            'A': self.restricted().tolist(),
            'columns': [str(c) for c in self.columns],
            'bookkeeping': self.bookkeeping.to_dict(),
            'i_stars': list(self.i_stars),
            'history': [r.to_dict() for r in self.history],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ZPCertificate':
        try:
            return cls(tuple(data['I_star']), tuple(Solution.from_string(c) for c in data['columns']),
                       ZPBookkeeping.from_dict(data['bookkeeping']), tuple(data['i_stars']))
        except KeyError as exc:
            raise ModelError(f"certificate description is missing field {exc.args[0]!r}") from None


def _check_zp_preconditions(instance: Instance, partition, x: Solution) -> Tuple[IndexTuple, ...]:
    blocks = validate_partition(partition, instance.n, instance.d)
    d = instance.d
    for k, block in enumerate(blocks):
        if len(block) <= d * (d + 1):
            raise WitnessPreconditionError(
                f"|P_{k}| = {len(block)} must exceed d(d+1) = {d * (d + 1)}")
    if not instance.evaluation.contains(x):
        raise WitnessPreconditionError(f"{x} is not a feasible solution")
    if min_partition_gap(instance, blocks) == 0.0:
        raise WitnessPreconditionError("instance has exact ties between block-differing solutions")
    return blocks


def _in_order(rows: np.ndarray, lex_rank: np.ndarray) -> List[int]:
    return [int(r) for r in rows[np.argsort(lex_rank[rows])]]


def witness_zp(instance: Instance, partition: Sequence[Sequence[int]],
               x: Solution) -> Tuple[FrozenSet[Solution], Optional[ZPCertificate]]:
    """
    Run the zero-preserving witness procedure for x.

    Args:
        instance: Instance whose row k vanishes outside P_k
        partition: Blocks P_1..P_d covering range(n)
        x: Feasible solution, normally Pareto-optimal

    Returns:
        (result set, certificate); the result is {x} for Pareto-optimal x.
        On failure the result is empty and the certificate None.
    """
    blocks = _check_zp_preconditions(instance, partition, x)
    ev = instance.evaluation
    d = instance.d
    xrow = ev.row_of(x)
    xbits = ev.bits[xrow]
    xlin = ev.linear[xrow]
    block_agree = [ev.agree_mask(block, xbits) for block in blocks]

    I: IndexTuple = ()
    K: Tuple[int, ...] = tuple(range(d))
    r = 1
    r_k: List[Optional[int]] = [None] * d
    t_r: List[int] = []
    columns: List[Solution] = []
    history: List[ZPRound] = []

    while True:
        d_prime = len(K)
        R = ev.agree_mask(I, xbits)
        for k in range(d):
            if k not in K:
                R &= block_agree[k]
        if d_prime == 0:
            result = frozenset(ev.solution(int(w)) for w in np.flatnonzero(R))
            break

        recursed = False
        for t in range(d_prime, -1, -1):
            active = list(K[:t])
            C = R & np.all(ev.linear[:, active] < xlin[active], axis=1) if t else R.copy()
            objective = d if t == d_prime else K[t]
            if C.any():
                w = ev.argmin(C, objective)
                xt = ev.solution(w)
                K_eq = tuple(k for k in K if xt.restrict(blocks[k]) == x.restrict(blocks[k]))
                added = []
                for k in K:
                    if k in K_eq:
                        r_k[k] = r
                    else:
                        i = xt.first_difference(x, within=blocks[k])
                        added.append(i)
                I = I + tuple(added)
                columns.append(xt)
                history.append(ZPRound(r, t, K, True, xt, K_eq, tuple(added)))
                if not K_eq:
                    key = ev.key(objective)
                    R = R & ev.agree_mask(I, xbits) & (key < key[w])
                    continue
                t_r.append(t)
                K = tuple(k for k in K if k not in K_eq)
                r += 1
                recursed = True
                break
            else:
                added = []
                for k in K:
                    i_k = first_free_index(instance.n, I + tuple(added), within=blocks[k])
                    if i_k is None:
                        raise WitnessPreconditionError(f"block P_{k} has no unused index left")
                    added.append(i_k)
                I = I + tuple(added)
                xt = x.flip(*added)
                columns.append(xt)
                history.append(ZPRound(r, t, K, False, xt, (), tuple(added)))
                R = R & ev.agree_mask(I, xbits)
        if not recursed:
            logger.debug("zero-preserving witness failed for %s in call %d", x, r)
            return frozenset(), None

    i_stars = []
    for k in range(d):
        i = first_free_index(instance.n, I, within=blocks[k])
        if i is None:
            raise WitnessPreconditionError(f"block P_{k} has no index left for i*")
        i_stars.append(i)
    bookkeeping = ZPBookkeeping(tuple(r_k), tuple(t_r))
    cert = ZPCertificate(I + tuple(i_stars), tuple(columns), bookkeeping, tuple(i_stars), tuple(history))
    return result, cert


def zp_shift_vector(I_star: Sequence[int], A, i_stars: Sequence[int], n: int) -> Solution:
    """Complement of x at every i*_k, x elsewhere on I*, zero outside I*."""
    I_star = tuple(I_star)
    A = np.asarray(A, dtype=np.int8).reshape(len(I_star), -1)
    flipped = set(i_stars)
    bits = [0] * n
    for row, i in enumerate(I_star):
        value = int(A[row, -1])
        bits[i] = 1 - value if i in flipped else value
    return Solution(tuple(bits))


def witness_zp_reconstruct(instance: Instance, partition: Sequence[Sequence[int]], I_star: Sequence[int],
                           A, bookkeeping: ZPBookkeeping, B, u) -> FrozenSet[Solution]:
    """
    Rebuild {x} from a zero-preserving certificate, a box corner and a shift.

    Args:
        instance: The instance the certificate was taken from
        partition: Blocks P_1..P_d
        I_star: Certificate index tuple
        A: |I*| x columns bit matrix in bookkeeping.column_labels() order
        bookkeeping: r_k and t_r of the run
        B: Corner b of the box containing V(x - u)
        u: Shift vector of length n

    Returns:
        {x}, or the empty set when the certificate does not fit
    """
    blocks = validate_partition(partition, instance.n, instance.d)
    ev = instance.evaluation
    d = instance.d
    I_star = list(I_star)
    labels = bookkeeping.column_labels()
    A = np.asarray(A, dtype=np.int8).reshape(len(I_star), -1)
    if A.shape[1] != len(labels):
        return frozenset()
    b = np.asarray(B, dtype=np.float64)
    shifted = ev.shifted_linear(_as_bits(u, instance.n))
    agree = {label: (np.all(ev.bits[:, I_star] == A[:, c], axis=1) if I_star else np.ones(ev.m, dtype=bool))
             for c, label in enumerate(labels)}
    empty = np.zeros(ev.m, dtype=bool)

    S_prime = np.ones(ev.m, dtype=bool)
    K: Tuple[int, ...] = tuple(range(d))
    r = 1
    while True:
        d_prime = len(K)
        if d_prime == 0:
            return frozenset(ev.solution(int(w)) for w in np.flatnonzero(S_prime))
        if r > bookkeeping.calls:
            return frozenset()
        t_stop = bookkeeping.t_r[r - 1]

        def union(lo: int, hi: int) -> np.ndarray:
            mask = empty.copy()
            for s in range(lo, hi + 1):
                mask |= agree.get((r, s), empty)
            return mask

        R = S_prime & union(t_stop, d_prime)
        advanced = False
        for t in range(d_prime, -1, -1):
            active = list(K[:t])
            C = R & agree.get((r, t), empty)
            if t:
                C &= np.all(shifted[:, active] <= b[active], axis=1)
            objective = d if t == d_prime else K[t]
            if C.any():
                w = ev.argmin(C, objective)
                if t == t_stop:
                    xt = ev.bits[w]
                    K_eq = tuple(k for k in K if bookkeeping.r_k[k] == r)
                    for k in K_eq:
                        S_prime &= ev.agree_mask(blocks[k], xt)
                    K = tuple(k for k in K if k not in K_eq)
                    r += 1
                    advanced = True
                    break
                key = ev.key(objective)
                R = R & union(t_stop, t - 1) & (key < key[w])
            else:
                R = R & union(t_stop, t - 1)
        if not advanced:
            logger.debug("zero-preserving reconstruction failed in call %d", r)
            return frozenset()


@dataclass(frozen=True)
class ZPBlock:
    """Revealed combinations of V^k on I*_k: [P_k | Q_k] plus the closing column."""
    k: int
    rows: IndexTuple
    P: np.ndarray
    Q: np.ndarray
    p_last: np.ndarray

    @property
    def revealed(self) -> np.ndarray:
        return np.column_stack([self.P, self.Q])

    @property
    def full(self) -> np.ndarray:
        return np.column_stack([self.revealed, self.p_last])

    def independent(self) -> bool:
        return columns_independent(self.full)


def zp_matrices(certificate: ZPCertificate, partition: Sequence[Sequence[int]], u) -> List[ZPBlock]:
    """
    Per-objective blocks [P_k | Q_k | p^(r_k, t_{r_k})] on the rows I*_k = I* ∩ P_k.

    P_k holds the p-columns of calls 1..r_k-1; Q_k is built from call r_k like
    the single-certificate Q matrices, with j_k the 1-based position of k in
    that call's active list.
    """
    blocks = [tuple(sorted(b)) for b in partition]
    bk = certificate.bookkeeping
    labels = bk.column_labels()
    A = certificate.restricted().astype(np.int64)
    I_star = certificate.I_star
    u_bits = _as_bits(u, len(certificate.x))
    out = []
    for k in range(bk.d):
        rows_k = tuple_intersect(I_star, blocks[k])
        positions = [I_star.index(i) for i in rows_k]
        u_k = u_bits[list(rows_k)].astype(np.int64)

        def p(r: int, t: int) -> np.ndarray:
            return A[positions, labels.index((r, t))] - u_k

        rk = bk.r_k[k]
        P_cols = [p(r, t) for (r, t) in labels if r < rk]
        K = bk.K(rk)
        j = K.index(k) + 1
        d_prime = len(K)
        t_stop = bk.t_r[rk - 1]
        Q_cols = [p(rk, t) for t in range(d_prime, j - 1, -1)]
        Q_cols += [p(rk, t) - p(rk, j - 1) for t in range(j - 2, t_stop - 1, -1)]
        empty = np.zeros((len(rows_k), 0), dtype=np.int64)
        P = np.column_stack(P_cols) if P_cols else empty
        Q = np.column_stack(Q_cols) if Q_cols else empty
        out.append(ZPBlock(k, rows_k, P, Q, p(rk, t_stop)))
    return out


def flip_matrix(certificate: ZPCertificate, partition: Sequence[Sequence[int]], k: int) -> np.ndarray:
    """Columns of calls 1..r_k restricted to I* ∩ P_k (the per-objective matrix M)."""
    rows_k = tuple_intersect(certificate.I_star, sorted(partition[k]))
    labels = certificate.bookkeeping.column_labels()
    rk = certificate.bookkeeping.r_k[k]
    cols = [c for c, (r, _) in enumerate(labels) if r <= rk]
    return np.array([[certificate.columns[c].bits[i] for c in cols] for i in rows_k],
                    dtype=np.int8).reshape(len(rows_k), len(cols))
