"""
Problem instances: linear objectives, an adversarial objective and a solution set.

Objectives 0..d-1 are the linear ones (coefficient rows of V), objective d
is the adversarial one. Every objective is minimised.

Author: Grigor Crandon
"""

import json
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from ..errors import ModelError
from .solution import Solution

if TYPE_CHECKING:  # pragma: no cover
    from ..solutions.solution_set import SolutionSet

logger = logging.getLogger(__name__)


def _hex(value: float) -> str:
    return float(value).hex()


def _unhex(value) -> float:
    if isinstance(value, str):
        return float.fromhex(value)
    return float(value)


@dataclass(frozen=True)
class ObjectiveVector:
    """Values of the d linear objectives plus the adversarial objective."""
    linear: Tuple[float, ...]
    adversarial: float

    @property
    def d(self) -> int:
        return len(self.linear)

    def as_tuple(self) -> Tuple[float, ...]:
        return tuple(self.linear) + (self.adversarial,)

    def to_dict(self) -> Dict[str, Any]:
        return {'linear': list(self.linear), 'adversarial': self.adversarial}


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True when a is no worse than b everywhere and strictly better somewhere."""
    if a.d != b.d:
        raise ModelError(f"cannot compare objective vectors of sizes {a.d} and {b.d}")
    pa, pb = a.as_tuple(), b.as_tuple()
    return all(x <= y for x, y in zip(pa, pb)) and any(x < y for x, y in zip(pa, pb))


class AdversarialObjective(ABC):
    """
    Arbitrary fixed objective over the solution set.

    Injectivity is not required: ties are broken by lexicographic order of
    the solutions wherever a strict order is needed.
    """

    kind: str = "abstract"

    @abstractmethod
    def values(self, bits: np.ndarray) -> np.ndarray:
        """Objective values for each row of an (m, n) 0/1 matrix."""

    def value(self, x: Solution) -> float:
        return float(self.values(x.as_array()[None, :])[0])

    @abstractmethod
    def to_dict(self, solution_set: 'SolutionSet') -> Dict[str, Any]:
        """JSON-ready description, aligned with the enumeration order of solution_set."""


class LinearAdversarial(AdversarialObjective):
    """Adversarial objective given by a weight vector."""

    kind = "linear"

    def __init__(self, weights: Sequence[float]):
        self.weights = np.asarray(weights, dtype=np.float64)
        if self.weights.ndim != 1:
            raise ModelError("linear adversarial weights must be a vector")
        self.weights.setflags(write=False)

    @classmethod
    def constant(cls, n: int) -> 'LinearAdversarial':
        """The all-zero objective: only the linear objectives decide dominance."""
        return cls(np.zeros(n))

    def values(self, bits: np.ndarray) -> np.ndarray:
        if bits.shape[1] != self.weights.shape[0]:
            raise ModelError(
                f"adversarial weights have length {self.weights.shape[0]}, solutions {bits.shape[1]}"
            )
        return bits.astype(np.float64) @ self.weights

    def to_dict(self, solution_set=None) -> Dict[str, Any]:
        return {'kind': self.kind, 'weights': [_hex(w) for w in self.weights]}

    def __repr__(self) -> str:
        return f"LinearAdversarial(n={self.weights.shape[0]})"


class TableAdversarial(AdversarialObjective):
    """Adversarial objective given by an explicit value per solution."""

    kind = "table"

    def __init__(self, table: Mapping[Any, float]):
        self.table: Dict[Tuple[int, ...], float] = {}
        for key, value in table.items():
            bits = key.bits if isinstance(key, Solution) else tuple(int(b) for b in key)
            self.table[bits] = float(value)

    def values(self, bits: np.ndarray) -> np.ndarray:
        try:
            return np.asarray([self.table[tuple(row)] for row in bits.tolist()],
                              dtype=np.float64)
        except KeyError as exc:
            raise ModelError(f"adversarial table has no value for solution {exc.args[0]}") from None

    def to_dict(self, solution_set: 'SolutionSet') -> Dict[str, Any]:
        rows = solution_set.as_array()
        return {'kind': self.kind, 'values': [_hex(v) for v in self.values(rows)]}

    def __repr__(self) -> str:
        return f"TableAdversarial(size={len(self.table)})"


def adversarial_from_dict(data: Dict[str, Any], solution_set: 'SolutionSet') -> AdversarialObjective:
    kind = data.get('kind')
    if kind == LinearAdversarial.kind:
        return LinearAdversarial([_unhex(w) for w in data['weights']])
    if kind == TableAdversarial.kind:
        values = [_unhex(v) for v in data['values']]
        rows = solution_set.as_array().tolist()
        if len(values) != len(rows):
            raise ModelError(f"adversarial table has {len(values)} values for {len(rows)} solutions")
        return TableAdversarial({tuple(r): v for r, v in zip(rows, values)})
    raise ModelError(f"unknown adversarial objective kind: {kind!r}")


class Evaluation:
    """
    Objective values of every solution of an instance, as numpy arrays.

    Rows follow the enumeration order of the solution set. The adversarial
    objective is also available as a rank in the total order
    (value, lexicographic rank), which is what strict comparisons use.
    """

    def __init__(self, instance: 'Instance'):
        self.instance = instance
        self.bits: np.ndarray = instance.solution_set.as_array()
        self.m = self.bits.shape[0]
        self.d = instance.d
        self.linear: np.ndarray = self.bits.astype(np.float64) @ instance.coefficients.T
        self.adversarial: np.ndarray = instance.adversarial.values(self.bits)

        lex_order = np.lexsort(self.bits.T[::-1]) if self.m else np.arange(0)
        self.lex_rank = np.empty(self.m, dtype=np.int64)
        self.lex_rank[lex_order] = np.arange(self.m)

        adv_order = np.lexsort((self.lex_rank, self.adversarial)) if self.m else np.arange(0)
        self.adversarial_rank = np.empty(self.m, dtype=np.int64)
        self.adversarial_rank[adv_order] = np.arange(self.m)
        self.cache: Dict[str, Any] = {}

    @cached_property
    def _rows(self) -> Dict[Tuple[int, ...], int]:
        return {tuple(row): i for i, row in enumerate(self.bits.tolist())}

    def row_of(self, x: Solution) -> int:
        try:
            return self._rows[x.bits]
        except KeyError:
            raise ModelError(f"solution {x} is not in the solution set") from None

    def contains(self, x: Solution) -> bool:
        return x.bits in self._rows

    def solution(self, row: int) -> Solution:
        return Solution(tuple(self.bits[row].tolist()))

    def key(self, objective: int) -> np.ndarray:
        """Sort key of objective j; j == d is the adversarial total order."""
        if objective == self.d:
            return self.adversarial_rank
        return self.linear[:, objective]

    def agree_mask(self, indices: Sequence[int], reference) -> np.ndarray:
        """Rows z with z|_indices == reference|_indices."""
        indices = list(indices)
        if not indices:
            return np.ones(self.m, dtype=bool)
        ref = np.asarray(reference, dtype=np.int8)[indices]
        return np.all(self.bits[:, indices] == ref, axis=1)

    def shifted_linear(self, u) -> np.ndarray:
        """V^{1..d}(z - u) for every row z."""
        u = np.asarray(u, dtype=np.int8)
        return (self.bits - u).astype(np.float64) @ self.instance.coefficients.T

    def argmin(self, mask: np.ndarray, objective: int) -> int:
        """Row minimising the objective over mask, ties to the lexicographically smallest."""
        candidates = np.flatnonzero(mask)
        if candidates.size == 0:
            raise ModelError("argmin over an empty set")
        keys = self.key(objective)[candidates]
        order = np.lexsort((self.lex_rank[candidates], keys))
        return int(candidates[order[0]])

    def objective_vector(self, row: int) -> ObjectiveVector:
        return ObjectiveVector(tuple(float(v) for v in self.linear[row]),
                               float(self.adversarial[row]))


class Instance:
    """
    A d x n coefficient matrix V with entries in [-1, 1], an adversarial
    objective and a solution set over {0,1}^n.

    Instances are immutable; use with_coefficients to get a variant with
    different coefficients. The witness machinery needs n >= d + 1; pass
    witness_size=False for instances that are only evaluated and filtered,
    such as linearised polynomial problems with few monomials.
    """

    def __init__(self, coefficients, adversarial: AdversarialObjective, solution_set: 'SolutionSet',
                 witness_size: bool = True):
        V = np.array(coefficients, dtype=np.float64)
        if V.ndim != 2:
            raise ModelError(f"coefficients must be a d x n matrix, got shape {V.shape}")
        d, n = V.shape
        if d < 1:
            raise ModelError("need at least one linear objective")
        if n != solution_set.n:
            raise ModelError(f"coefficients have {n} columns but solutions have length {solution_set.n}")
        if witness_size and n < d + 1:
            raise ModelError(f"need n >= d + 1, got n={n}, d={d}")
        if not np.all(np.isfinite(V)) or np.any(np.abs(V) > 1.0):
            raise ModelError("coefficients must lie in [-1, 1]")
        V.setflags(write=False)
        self.coefficients = V
        self.witness_size = witness_size
        self.adversarial = adversarial
        self.solution_set = solution_set

    @property
    def d(self) -> int:
        return self.coefficients.shape[0]

    @property
    def n(self) -> int:
        return self.coefficients.shape[1]

    @cached_property
    def evaluation(self) -> Evaluation:
        logger.debug("evaluating %d solutions (n=%d, d=%d)", len(self.solution_set), self.n, self.d)
        return Evaluation(self)

    def with_coefficients(self, coefficients) -> 'Instance':
        return Instance(coefficients, self.adversarial, self.solution_set, self.witness_size)

    def evaluate(self, x: Solution, u: Optional[Solution] = None) -> ObjectiveVector:
        return evaluate(self, x, u)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'd': self.d,
            'coefficients': [[_hex(v) for v in row] for row in self.coefficients],
            'adversarial': self.adversarial.to_dict(self.solution_set),
            'solution_set': self.solution_set.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Instance':
        from ..solutions.solution_set import solution_set_from_dict

        try:
            solution_set = solution_set_from_dict(data['solution_set'])
            V = [[_unhex(v) for v in row] for row in data['coefficients']]
            adversarial = adversarial_from_dict(data['adversarial'], solution_set)
        except KeyError as exc:
            raise ModelError(f"instance description is missing field {exc.args[0]!r}") from None
        instance = cls(V, adversarial, solution_set)
        if 'd' in data and int(data['d']) != instance.d:
            raise ModelError(f"declared d={data['d']} does not match coefficients")
        return instance

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> 'Instance':
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, d={self.d}, |S|={len(self.solution_set)}, adversarial={self.adversarial!r})"


def evaluate(instance: Instance, x: Solution, u: Optional[Solution] = None) -> ObjectiveVector:
    """
    Objective vector of x; with a shift u the linear part becomes V(x - u).

    The adversarial component is never shifted.
    """
    if x.n != instance.n:
        raise ModelError(f"solution has length {x.n}, instance has n={instance.n}")
    vec = x.as_array().astype(np.float64)
    if u is not None:
        if u.n != instance.n:
            raise ModelError(f"shift has length {u.n}, instance has n={instance.n}")
        vec = vec - u.as_array()
    linear = instance.coefficients @ vec
    return ObjectiveVector(tuple(float(v) for v in linear), instance.adversarial.value(x))
