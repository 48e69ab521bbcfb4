"""
Pareto sets and the engine interface.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Set, Tuple

import pandas as pd

from ..model.instance import Instance, ObjectiveVector
from ..model.solution import Solution


@dataclass
class ParetoSet:
    """Pareto-optimal solutions with their objective vectors, in canonical order."""
    members: List[Tuple[Solution, ObjectiveVector]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Tuple[Solution, ObjectiveVector]]:
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return any(x == s for s, _ in self.members)

    def solutions(self) -> Set[Solution]:
        return {s for s, _ in self.members}

    def to_dataframe(self) -> pd.DataFrame:
        """One row per member: solution bits, V1..Vd, then the adversarial value."""
        if not self.members:
            return pd.DataFrame(columns=['solution'])
        d = self.members[0][1].d
        rows: List[Dict[str, Any]] = []
        for s, vec in self.members:
            row: Dict[str, Any] = {'solution': str(s)}
            for k, value in enumerate(vec.linear, start=1):
                row[f'V{k}'] = value
            row[f'V{d + 1}'] = vec.adversarial
            rows.append(row)
        return pd.DataFrame(rows)

    def to_csv(self, path) -> None:
        self.to_dataframe().to_csv(path, index=False, float_format='%.17g')


class ParetoEngine(ABC):
    """Base class for Pareto-set enumeration algorithms."""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def applicable(self, instance: Instance) -> bool:
        """True when the engine can handle the instance."""

    @abstractmethod
    def compute(self, instance: Instance) -> ParetoSet:
        """Enumerate the Pareto set of the instance."""

    def count(self, instance: Instance) -> int:
        return self.compute(instance).count

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"
