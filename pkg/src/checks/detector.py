"""
Base classes for property checks on a single instance.

A check inspects one realization (and its Pareto set) and reports every
place where a structural property of the witness machinery fails.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvariantViolation, WitnessPreconditionError
from ..model.events import validate_partition, working_epsilon, working_epsilon_zp
from ..model.instance import Instance
from ..model.solution import IndexTuple, Solution
from ..pareto.counting import pareto_set
from ..utils.seeds import trial_rng

logger = logging.getLogger(__name__)


class Severity(Enum):
    """Violation severity levels."""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


@dataclass
class Violation:
    """One failed property."""
    check_name: str
    severity: Severity
    message: str
    solution: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'check_name': self.check_name,
            'severity': self.severity.value,
            'message': self.message,
            'solution': self.solution,
            'metadata': self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Violation':
        return cls(
            check_name=data['check_name'],
            severity=Severity(data['severity']),
            message=data['message'],
            solution=data.get('solution'),
            metadata=data.get('metadata', {}),
        )


@dataclass
class CheckContext:
    """
    Instance under test plus the data every check needs.

    partition is only set for zero-preserving instances; eps defaults to
    the working epsilon of the matching good event.
    """
    instance: Instance
    partition: Optional[Sequence[Sequence[int]]] = None
    eps: Optional[float] = None
    seed: int = 0
    engine: str = 'auto'

    def __post_init__(self):
        if self.partition is not None:
            self.partition = validate_partition(self.partition, self.instance.n, self.instance.d)
        if self.eps is None:
            if self.partition is not None:
                self.eps = working_epsilon_zp(self.instance, self.partition)
            else:
                self.eps = working_epsilon(self.instance)

    @cached_property
    def pareto(self) -> List[Solution]:
        """Pareto-optimal solutions in lexicographic order."""
        return sorted(pareto_set(self.instance, engine=self.engine).solutions())

    @property
    def blocks(self) -> Tuple[IndexTuple, ...]:
        return tuple(self.partition) if self.partition is not None else ()

    def rng(self, salt: int = 0) -> np.random.Generator:
        return trial_rng(self.seed, salt)


class PropertyCheck(ABC):
    """Base class for property checks."""

    requires_partition = False

    def __init__(self, name: str, severity: Severity = Severity.HIGH):
        self.name = name
        self.severity = severity
        self.violations: List[Violation] = []

    def applicable(self, context: CheckContext) -> bool:
        return context.partition is not None or not self.requires_partition

    @abstractmethod
    def check(self, context: CheckContext) -> List[Violation]:
        """Run the check and return its violations."""
        pass

    def violation(self, message: str, solution: Optional[Solution] = None, **metadata) -> Violation:
        return Violation(self.name, self.severity, message,
                         str(solution) if solution is not None else None, dict(metadata))

    def reset(self):
        self.violations.clear()

    def get_violations(self) -> List[Violation]:
        return self.violations.copy()


class CheckManager:
    """Runs a list of checks against one context and collects violations."""

    def __init__(self, checks: Optional[Sequence[PropertyCheck]] = None):
        self.checks: List[PropertyCheck] = list(checks or [])
        self.all_violations: List[Violation] = []
        self.results: Dict[str, int] = {}

    def add_check(self, check: PropertyCheck):
        self.checks.append(check)

    def run(self, context: CheckContext) -> List[Violation]:
        """Run every applicable check; results maps check name to violation count (-1 = skipped)."""
        new_violations = []
        for check in self.checks:
            if not check.applicable(context):
                self.results[check.name] = -1
                continue
            try:
                found = check.check(context)
            except WitnessPreconditionError as exc:
                found = [check.violation(f"precondition failed: {exc}")]
            check.violations.extend(found)
            self.results[check.name] = len(found)
            new_violations.extend(found)
            logger.debug("check %s: %d violations", check.name, len(found))
        self.all_violations.extend(new_violations)
        return new_violations

    def raise_for_violations(self):
        if self.all_violations:
            raise InvariantViolation(f"{len(self.all_violations)} property violations",
                                     self.all_violations)

    def get_all_violations(self) -> List[Violation]:
        return self.all_violations.copy()

    def reset(self):
        for check in self.checks:
            check.reset()
        self.all_violations.clear()
        self.results.clear()
