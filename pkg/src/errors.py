"""
Exception hierarchy for the pareto-smooth package.

Every error raised on purpose by the library derives from ParetoSmoothError.
Errors about bad input also derive from ValueError, so code that catches
ValueError keeps working.
"""


class ParetoSmoothError(Exception):
    """Base class for all package errors."""


class ModelError(ParetoSmoothError, ValueError):
    """Dimension mismatch, coefficient out of range, bad partition or box."""


class DensityError(ParetoSmoothError, ValueError):
    """Invalid density parameters or an operation the density does not support."""


class EnumerationCapError(ParetoSmoothError):
    """A solution set is too large to enumerate under the configured cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"solution set of size {size} exceeds enumeration cap {cap}")


class EngineMismatchError(ParetoSmoothError, ValueError):
    """A Pareto engine was requested for an instance it cannot handle."""


class WitnessPreconditionError(ParetoSmoothError, ValueError):
    """A witness routine was called outside its preconditions."""


class RankDeficientError(ParetoSmoothError, ValueError):
    """A matrix that has to be full rank is not."""


class ConfigError(ParetoSmoothError, ValueError):
    """Invalid experiment configuration."""


class InvariantViolation(ParetoSmoothError):
    """A structural check on witnesses or certificates failed."""

    def __init__(self, message: str, violations=None):
        self.violations = list(violations or [])
        super().__init__(message)
