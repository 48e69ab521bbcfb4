"""
The epsilon grid on [-n, n]^dim.

Boxes are half-open on the left: the box of v has corner b = eps*(ceil(v/eps) - 1)
and contains v in (b, b + eps] coordinatewise. With eps a power of two the
division and the corner are exact in binary floating point.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ModelError


def is_power_of_two_eps(eps: float) -> bool:
    """True for eps = 2^-q with q >= 1."""
    if not (0.0 < eps <= 0.5) or not math.isfinite(eps):
        return False
    mantissa, _ = math.frexp(eps)
    return mantissa == 0.5


def eps_below(gap: float, ceiling: float = 0.5) -> float:
    """Largest 2^-q strictly below gap, capped at ceiling."""
    if gap <= 0.0 or math.isnan(gap):
        raise ModelError(f"no positive epsilon below gap {gap}")
    eps = ceiling
    while eps >= gap:
        eps /= 2.0
        if eps == 0.0:
            raise ModelError(f"gap {gap} is below the smallest representable epsilon")
    return eps


@dataclass(frozen=True)
class EpsilonGrid:
    """Axis-aligned grid of side eps on [-n, n]^dim."""
    eps: float
    dim: int
    n: int

    def __post_init__(self):
        if not is_power_of_two_eps(self.eps):
            raise ModelError(f"epsilon must be a negative power of two, got {self.eps}")
        if self.dim < 1 or self.n < 1:
            raise ModelError(f"grid needs dim >= 1 and n >= 1, got dim={self.dim}, n={self.n}")

    @property
    def boxes_per_axis(self) -> int:
        return int(round(2 * self.n / self.eps))

    @property
    def box_count(self) -> int:
        return self.boxes_per_axis ** self.dim

    def corner(self, v) -> np.ndarray:
        """Corner of the box containing v."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dim,):
            raise ModelError(f"expected a vector of length {self.dim}, got shape {v.shape}")
        if np.any(v < -self.n) or np.any(v > self.n):
            raise ModelError(f"vector {v.tolist()} lies outside [-{self.n}, {self.n}]")
        return self.eps * (np.ceil(v / self.eps) - 1.0)

    def contains(self, corner, v) -> bool:
        corner = np.asarray(corner, dtype=np.float64)
        v = np.asarray(v, dtype=np.float64)
        return bool(np.all(corner < v) and np.all(v <= corner + self.eps))


def epsilon_box(grid: EpsilonGrid, v) -> np.ndarray:
    """Corner b of the unique box with v in (b, b + eps]."""
    return grid.corner(v)
