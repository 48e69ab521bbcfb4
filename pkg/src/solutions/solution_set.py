"""
Feasible solution sets S over {0,1}^n.

Three kinds exist: explicit lists, the full hypercube (virtual, never stored
as Python objects) and the valid s-t paths of an AS graph (see paths.py).
Every set has a canonical, deterministic enumeration order.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import EnumerationCapError, ModelError
from ..model.instance import AdversarialObjective, TableAdversarial
from ..model.solution import IndexTuple, Solution, validate_index_tuple

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 2 ** 20


class SolutionSet(ABC):
    """Abstract base class for feasible sets."""

    kind: str = "abstract"

    def __init__(self, n: int):
        if n < 1:
            raise ModelError(f"solution length must be positive, got {n}")
        self.n = n
        self._array: Optional[np.ndarray] = None

    @abstractmethod
    def __iter__(self) -> Iterator[Solution]:
        """Solutions in canonical order."""

    @abstractmethod
    def __len__(self) -> int:
        pass

    def __contains__(self, x) -> bool:
        if not isinstance(x, Solution) or x.n != self.n:
            return False
        return any(x == y for y in self)

    def _build_array(self) -> np.ndarray:
        rows = [s.bits for s in self]
        if not rows:
            return np.zeros((0, self.n), dtype=np.int8)
        return np.asarray(rows, dtype=np.int8)

    def as_array(self, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
        """All solutions as an (m, n) int8 matrix in canonical order."""
        if len(self) > cap:
            raise EnumerationCapError(len(self), cap)
        if self._array is None:
            array = self._build_array()
            array.setflags(write=False)
            self._array = array
        return self._array

    def restrict(self, indices: Sequence[int], pattern) -> 'SolutionSet':
        return restrict(self, indices, pattern)

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready descriptor."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, size={len(self)})"


class ExplicitSolutionSet(SolutionSet):
    """A list of distinct solutions in insertion order."""

    kind = "explicit"

    def __init__(self, solutions: Iterable, n: Optional[int] = None):
        items: List[Solution] = []
        for s in solutions:
            if isinstance(s, Solution):
                items.append(s)
            elif isinstance(s, str):
                items.append(Solution.from_string(s))
            else:
                items.append(Solution.from_array(s))
        if n is None:
            if not items:
                raise ModelError("an empty explicit set needs an explicit n")
            n = items[0].n
        super().__init__(n)
        for s in items:
            if s.n != n:
                raise ModelError(f"solution {s} has length {s.n}, expected {n}")
        self._members = {s.bits for s in items}
        if len(self._members) != len(items):
            raise ModelError("explicit solution set contains duplicates")
        self.solutions: Tuple[Solution, ...] = tuple(items)

    @classmethod
    def from_lines(cls, text: str) -> 'ExplicitSolutionSet':
        """Parse newline-separated bit strings; blank lines and '#' comments are skipped."""
        lines = [ln.strip() for ln in text.splitlines()]
        return cls([ln for ln in lines if ln and not ln.startswith('#')])

    def to_lines(self) -> str:
        return ''.join(f"{s}\n" for s in self.solutions)

    def __iter__(self) -> Iterator[Solution]:
        return iter(self.solutions)

    def __len__(self) -> int:
        return len(self.solutions)

    def __contains__(self, x) -> bool:
        return isinstance(x, Solution) and x.bits in self._members

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'n': self.n, 'solutions': [str(s) for s in self.solutions]}


class HypercubeSolutionSet(SolutionSet):
    """All of {0,1}^n in lexicographic order (index 0 most significant)."""

    kind = "hypercube"

    def __iter__(self) -> Iterator[Solution]:
        n = self.n
        for value in range(2 ** n):
            yield Solution(tuple((value >> (n - 1 - i)) & 1 for i in range(n)))

    def __len__(self) -> int:
        return 2 ** self.n

    def __contains__(self, x) -> bool:
        return isinstance(x, Solution) and x.n == self.n

    def _build_array(self) -> np.ndarray:
        values = np.arange(2 ** self.n, dtype=np.int64)
        shifts = np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return ((values[:, None] >> shifts[None, :]) & 1).astype(np.int8)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'n': self.n}


class RestrictedSolutionSet(SolutionSet):
    """S_I(y): the members of a base set that agree with y on I."""

    kind = "restricted"

    def __init__(self, base: SolutionSet, indices: IndexTuple, pattern: Tuple[int, ...]):
        super().__init__(base.n)
        self.base = base
        self.indices = indices
        self.pattern = pattern

    def _matches(self, x: Solution) -> bool:
        return all(x.bits[i] == b for i, b in zip(self.indices, self.pattern))

    def __iter__(self) -> Iterator[Solution]:
        return (x for x in self.base if self._matches(x))

    def __len__(self) -> int:
        return int(self.as_array().shape[0])

    def __contains__(self, x) -> bool:
        return x in self.base and self._matches(x)

    def as_array(self, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
        if self._array is None:
            rows = self.base.as_array(cap)
            if self.indices:
                keep = np.all(rows[:, list(self.indices)] == np.asarray(self.pattern, dtype=np.int8), axis=1)
                rows = rows[keep]
            rows = np.array(rows)
            rows.setflags(write=False)
            self._array = rows
        return self._array

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': ExplicitSolutionSet.kind,
            'n': self.n,
            'solutions': [str(s) for s in self],
        }


def restrict(solution_set: SolutionSet, indices: Sequence[int], pattern) -> SolutionSet:
    """
    Members of solution_set agreeing with pattern on the given indices.

    Args:
        solution_set: Base set
        indices: Index tuple I
        pattern: A Solution of length n, or the bit values y|_I in I order

    Returns:
        S_I(y) in the canonical order of the base set
    """
    indices = validate_index_tuple(indices, solution_set.n)
    if not indices:
        return solution_set
    if isinstance(pattern, Solution):
        values = pattern.restrict(indices)
    else:
        values = tuple(int(b) for b in pattern)
    if len(values) != len(indices):
        raise ModelError(f"pattern has {len(values)} entries for {len(indices)} indices")
    return RestrictedSolutionSet(solution_set, indices, values)


def quotient_solutions(solution_set: SolutionSet, keep: Sequence[int],
                       adversarial: AdversarialObjective) -> Tuple[ExplicitSolutionSet, TableAdversarial]:
    """
    Project solutions onto the kept columns, merging solutions that become equal.

    Each merged class keeps the minimum adversarial value of its members.
    The result is in order of first appearance.
    """
    keep = list(keep)
    if not keep:
        raise ModelError("cannot project onto zero columns")
    rows = solution_set.as_array()
    values = adversarial.values(rows)
    best: Dict[Tuple[int, ...], float] = {}
    order: List[Tuple[int, ...]] = []
    for row, value in zip(rows[:, keep].tolist(), values.tolist()):
        key = tuple(row)
        if key not in best:
            best[key] = value
            order.append(key)
        elif value < best[key]:
            best[key] = value
    merged = len(rows) - len(order)
    if merged:
        logger.debug("quotient merged %d solutions onto %d columns", merged, len(keep))
    projected = ExplicitSolutionSet([Solution(k) for k in order], n=len(keep))
    return projected, TableAdversarial({k: best[k] for k in order})


def solution_set_from_dict(data: Dict[str, Any]) -> SolutionSet:
    kind = data.get('kind')
    if kind == HypercubeSolutionSet.kind:
        return HypercubeSolutionSet(int(data['n']))
    if kind == ExplicitSolutionSet.kind:
        return ExplicitSolutionSet(data['solutions'], n=int(data['n']))
    if kind == 'valid-paths':
        from .paths import ASGraph, valid_paths
        return valid_paths(ASGraph.from_dict(data['graph']))
    raise ModelError(f"unknown solution set kind: {kind!r}")
