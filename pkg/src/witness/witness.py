"""
The witness procedure and (V, I)-certificates.

witness(V, x, I) replays the search that identifies a Pareto-optimal x from
few revealed bits. Round t = d..1 keeps the solutions strictly better than
x in objectives 1..t, takes the minimiser x^(t) of objective t+1 and
records the first index where it differs from x. When no such solution
exists an unused index is recorded and x^(t) is x with that bit flipped.
Round 0 returns the minimiser of objective 1 among what is left, which is
x itself whenever x is Pareto-optimal and the OK event holds.

Objective t+1 = d+1 is the adversarial one and is compared in the total
order (value, lexicographic rank).
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ModelError, WitnessPreconditionError
from ..model.events import has_exact_ties, ok_event
from ..model.instance import Instance
from ..model.solution import IndexTuple, Solution, first_free_index, validate_index_tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessRound:
    """One round of the witness loop."""
    t: int
    winner_found: bool
    vector: Solution
    index: Optional[int]
    I: IndexTuple

    def to_dict(self) -> Dict[str, Any]:
        return {
            't': self.t,
            'winner_found': self.winner_found,
            'vector': str(self.vector),
            'index': self.index,
            'I': list(self.I),
        }


@dataclass(frozen=True)
class WitnessTrace:
    """All rounds of one witness call; result is None for the sentinel."""
    x: Solution
    I_input: IndexTuple
    rounds: Tuple[WitnessRound, ...]
    result: Optional[Solution]

    @property
    def vectors(self) -> Tuple[Solution, ...]:
        """x^(d), ..., x^(t_last) in round order."""
        return tuple(r.vector for r in self.rounds)

    @property
    def indices(self) -> IndexTuple:
        """i_d, ..., i_1."""
        return tuple(r.index for r in self.rounds if r.index is not None)

    @property
    def final_I(self) -> IndexTuple:
        return self.rounds[-1].I if self.rounds else self.I_input

    def vector(self, t: int) -> Solution:
        for r in self.rounds:
            if r.t == t:
                return r.vector
        raise KeyError(t)

    def to_jsonl(self) -> str:
        return ''.join(json.dumps(r.to_dict()) + '\n' for r in self.rounds)


def _check_preconditions(instance: Instance, x: Solution, I: Sequence[int], eps: Optional[float]) -> IndexTuple:
    I = validate_index_tuple(I, instance.n)
    if len(I) > instance.n - (instance.d + 1):
        raise WitnessPreconditionError(
            f"|I| = {len(I)} exceeds n - (d + 1) = {instance.n - instance.d - 1}")
    if x.n != instance.n:
        raise WitnessPreconditionError(f"solution length {x.n} does not match n={instance.n}")
    if not instance.evaluation.contains(x):
        raise WitnessPreconditionError(f"{x} is not a feasible solution")
    if eps is not None:
        if not ok_event(instance, eps):
            raise WitnessPreconditionError(f"OK event fails at eps={eps}")
    elif has_exact_ties(instance):
        raise WitnessPreconditionError("instance has exact objective ties")
    return I


def witness(instance: Instance, x: Solution, I: Sequence[int] = (), *,
            eps: Optional[float] = None) -> WitnessTrace:
    """
    Run the witness loop for x with forbidden indices I.

    Args:
        instance: Instance with no exact ties (or satisfying OK at eps)
        x: Feasible solution, normally Pareto-optimal
        I: Index tuple already revealed by earlier calls
        eps: Optional grid width at which the OK event must hold

    Returns:
        The trace; trace.result is x for Pareto-optimal x
    """
    I = _check_preconditions(instance, x, I, eps)
    ev = instance.evaluation
    d, n = instance.d, instance.n
    xrow = ev.row_of(x)
    xbits = ev.bits[xrow]
    xlin = ev.linear[xrow]

    I_run = I
    R = ev.agree_mask(I_run, xbits)
    rounds: List[WitnessRound] = []
    for t in range(d, -1, -1):
        C = R & np.all(ev.linear[:, :t] < xlin[:t], axis=1) if t else R.copy()
        if C.any():
            w = ev.argmin(C, t)
            xt = ev.solution(w)
            if t == 0:
                rounds.append(WitnessRound(t, True, xt, None, I_run))
                return WitnessTrace(x, I, tuple(rounds), xt)
            i_t = int(np.flatnonzero(ev.bits[w] != xbits)[0])
            I_run = I_run + (i_t,)
            key = ev.key(t)
            R = R & ev.agree_mask(I_run, xbits) & (key < key[w])
            rounds.append(WitnessRound(t, True, xt, i_t, I_run))
        else:
            if t == 0:
                rounds.append(WitnessRound(t, False, x, None, I_run))
                break
            i_t = first_free_index(n, I_run)
            if i_t is None:
                raise WitnessPreconditionError("no unused index left for a trivial winner")
            I_run = I_run + (i_t,)
            R = R & ev.agree_mask(I_run, xbits)
            rounds.append(WitnessRound(t, False, x.flip(i_t), i_t, I_run))
    logger.debug("witness returned the sentinel for %s", x)
    return WitnessTrace(x, I, tuple(rounds), None)


@dataclass(frozen=True)
class Certificate:
    """
    The (V, I)-certificate of x.

    columns are the full vectors x^(d), ..., x^(0); I_star is the input
    tuple, then i_d..i_1, then i* = the smallest unused index.
    """
    I_star: IndexTuple
    columns: Tuple[Solution, ...]
    I_input: IndexTuple = ()

    @property
    def d(self) -> int:
        return len(self.columns) - 1

    @property
    def i_star(self) -> int:
        return self.I_star[-1]

    @property
    def x(self) -> Solution:
        return self.columns[-1]

    def restrict_to(self, J: Sequence[int]) -> np.ndarray:
        """A*|_J with rows in J order and one column per x^(t)."""
        return np.array([[col.bits[j] for col in self.columns] for j in J], dtype=np.int8).reshape(len(J), len(self.columns))

    def restricted(self) -> np.ndarray:
        return self.restrict_to(self.I_star)

    def full_matrix(self) -> np.ndarray:
        return np.array([col.bits for col in self.columns], dtype=np.int8).T

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'witness',
            'I_star': list(self.I_star),
            'I_input': list(self.I_input),
            'A': self.restricted().tolist(),
            'columns': [str(c) for c in self.columns],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Certificate':
        try:
            return cls(tuple(data['I_star']), tuple(Solution.from_string(c) for c in data['columns']),
                       tuple(data.get('I_input', ())))
        except KeyError as exc:
            raise ModelError(f"certificate description is missing field {exc.args[0]!r}") from None


def extract_certificate(instance: Instance, x: Solution, I: Sequence[int] = (), *,
                        eps: Optional[float] = None) -> Certificate:
    """
    Certificate of x relative to the forbidden tuple I.

    Raises WitnessPreconditionError when the witness loop does not return x.
    """
    trace = witness(instance, x, I, eps=eps)
    if trace.result != x:
        raise WitnessPreconditionError(f"witness for {x} returned {trace.result}; x is not Pareto-optimal")
    I_hat = trace.final_I
    i_star = first_free_index(instance.n, I_hat)
    if i_star is None:
        raise WitnessPreconditionError("no index left for i*")
    columns = trace.vectors
    return Certificate(I_hat + (i_star,), columns, tuple(trace.I_input))
