"""
Base Density Class

Abstract base class for the phi-bounded coefficient densities on [-1, 1].
Every family knows its support, its supremum phi, whether it is
quasiconcave, how to sample itself and how to describe itself as JSON.

Author: Grigor Crandon
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..errors import DensityError


class DensitySpec(ABC):
    """
    A probability density supported on a sub-interval of [-1, 1].

    Subclasses set `family` and implement pdf, phi, support and sampling.
    Quasiconcave subclasses also implement superlevel_interval, which the
    staircase decomposition needs.
    """

    family: str = "abstract"
    quasiconcave: bool = False

    def __init__(self, lo: float, hi: float, **kwargs):
        """
        Initialise the support.

        Args:
            lo: Left end of the support
            hi: Right end of the support
        """
        lo, hi = float(lo), float(hi)
        if not (-1.0 <= lo < hi <= 1.0):
            raise DensityError(f"{self.family} support [{lo}, {hi}] is not a nonempty sub-interval of [-1, 1]")
        self.lo = lo
        self.hi = hi

    @property
    def support(self) -> Tuple[float, float]:
        return self.lo, self.hi

    @abstractmethod
    def pdf(self, x) -> np.ndarray:
        """Density values at x (vectorised, zero outside the support)."""

    @abstractmethod
    def phi(self) -> float:
        """Supremum of the density."""

    @abstractmethod
    def mean(self) -> float:
        pass

    @abstractmethod
    def _sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        pass

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> Union[float, np.ndarray]:
        """
        Draw from the density.

        Args:
            rng: Seeded numpy generator owned by the caller
            size: Number of draws; None returns a single float

        Returns:
            A float or an array of floats inside the support
        """
        if size is None:
            return float(self._sample(rng, 1)[0])
        return self._sample(rng, int(size))

    def superlevel_interval(self, level: float) -> Optional[Tuple[float, float]]:
        """Open interval {x : f(x) > level}, or None when empty."""
        raise DensityError(f"{self.family} density has no interval superlevel sets")

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        """Family parameters as JSON-ready values."""

    def to_dict(self) -> Dict[str, Any]:
        return {'family': self.family, **self.params()}

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(repr(self.to_dict()))

    def __repr__(self) -> str:
        inner = ', '.join(f"{k}={v}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"


class ZeroSpec:
    """Deterministic zero coefficient."""

    family = "zero"
    quasiconcave = True

    def sample(self, rng: np.random.Generator, size: Optional[int] = None):
        return 0.0 if size is None else np.zeros(int(size))

    def to_dict(self) -> Dict[str, Any]:
        return {'family': self.family}

    def __eq__(self, other) -> bool:
        return isinstance(other, ZeroSpec)

    def __hash__(self) -> int:
        return hash(self.family)

    def __repr__(self) -> str:
        return "ZERO"


ZERO = ZeroSpec()


def sample(spec: DensitySpec, rng: np.random.Generator, size: Optional[int] = None):
    return spec.sample(rng, size)


def phi(spec: DensitySpec) -> float:
    return spec.phi()
