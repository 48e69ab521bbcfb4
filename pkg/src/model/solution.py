"""
Binary solution vectors and ordered index tuples.

Indices are 0-based throughout the package. An index tuple is an ordered
sequence of distinct positions; the order matters because the witness
routines append positions as they discover them.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..errors import ModelError

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Solution:
    """
    A 0/1 vector of length n.

    Comparison is lexicographic on the bit tuple, which is the tie-break
    order used by every argmin in the package.
    """
    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ModelError(f"solution entries must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def from_string(cls, text: str) -> 'Solution':
        """Parse a string such as '0110'."""
        text = text.strip()
        if not text or any(ch not in '01' for ch in text):
            raise ModelError(f"not a bit string: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_array(cls, values: Iterable) -> 'Solution':
        return cls(tuple(int(v) for v in values))

    @classmethod
    def zeros(cls, n: int) -> 'Solution':
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __str__(self) -> str:
        return ''.join(str(b) for b in self.bits)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=np.int8)

    def flip(self, *indices: int) -> 'Solution':
        """Return a copy with the given positions complemented."""
        bits = list(self.bits)
        for i in indices:
            bits[i] = 1 - bits[i]
        return Solution(tuple(bits))

    def restrict(self, indices: Sequence[int]) -> Tuple[int, ...]:
        """Entries at the given positions, in tuple order."""
        return tuple(self.bits[i] for i in indices)

    def agrees_with(self, other: 'Solution', indices: Sequence[int]) -> bool:
        return all(self.bits[i] == other.bits[i] for i in indices)

    def first_difference(self, other: 'Solution',
                         within: Optional[Sequence[int]] = None) -> Optional[int]:
        """
        First position where the two vectors differ.

        Args:
            other: Vector to compare with
            within: If given, scan only these positions in the given order

        Returns:
            The position, or None when the vectors agree there
        """
        positions = range(len(self.bits)) if within is None else within
        for i in positions:
            if self.bits[i] != other.bits[i]:
                return i
        return None


def _check_distinct(indices: Sequence[int], what: str = "index tuple") -> None:
    if len(set(indices)) != len(indices):
        raise ModelError(f"{what} has repeated entries: {tuple(indices)}")


def tuple_union(first: IndexTuple, second: IndexTuple) -> IndexTuple:
    """Concatenate, skipping entries of second already present in first."""
    seen = set(first)
    out = list(first)
    for i in second:
        if i not in seen:
            out.append(i)
            seen.add(i)
    return tuple(out)


def tuple_minus(first: IndexTuple, second: Iterable[int]) -> IndexTuple:
    """Entries of first not in second, order of first kept."""
    drop = set(second)
    return tuple(i for i in first if i not in drop)


def tuple_intersect(first: IndexTuple, second: Iterable[int]) -> IndexTuple:
    """Entries of first that also occur in second, order of first kept."""
    keep = set(second)
    return tuple(i for i in first if i in keep)


def tuple_subset(first: Iterable[int], second: Iterable[int]) -> bool:
    return set(first) <= set(second)


def first_free_index(n: int, used: Iterable[int],
                     within: Optional[Iterable[int]] = None) -> Optional[int]:
    """Smallest position of within (default range(n)) not in used."""
    taken = set(used)
    candidates = range(n) if within is None else sorted(within)
    for i in candidates:
        if i not in taken:
            return i
    return None


def restrict_vector(values: Sequence, indices: Sequence[int]) -> Tuple:
    """Restriction y|_I of any indexable vector, in tuple order."""
    return tuple(values[i] for i in indices)


def validate_index_tuple(indices: Sequence[int], n: int) -> IndexTuple:
    """Check that an index tuple is distinct and within range(n)."""
    indices = tuple(int(i) for i in indices)
    _check_distinct(indices)
    for i in indices:
        if i < 0 or i >= n:
            raise ModelError(f"index {i} outside range(0, {n})")
    return indices
