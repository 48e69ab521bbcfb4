"""
Staircase decomposition of a quasiconcave density.

The density f is rounded up to the next multiple of delta and the rounded
function g is written as a stack of rectangles: level j contributes height
delta on the superlevel interval {f > (j-1) delta}, closed at the ends like
the support. Consecutive levels with the same interval are merged into one
taller rectangle. Because f is quasiconcave every superlevel set is an
interval, so the heights of all rectangles sum to max g.
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import DensityError
from .base_density import DensitySpec


@dataclass(frozen=True)
class Rectangle:
    height: float
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def covers(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        return (x >= self.lo) & (x <= self.hi)


@dataclass(frozen=True)
class Staircase:
    rectangles: Tuple[Rectangle, ...]
    delta: float

    def height_at(self, x) -> np.ndarray:
        """Sum of the heights of the rectangles covering x."""
        x = np.asarray(x, dtype=np.float64)
        total = np.zeros_like(x)
        for rect in self.rectangles:
            total = total + np.where(rect.covers(x), rect.height, 0.0)
        return total

    @property
    def total_height(self) -> float:
        """Sum of the rectangle heights (chi in the integral bound)."""
        return float(sum(r.height for r in self.rectangles))

    @property
    def mass(self) -> float:
        """Integral of the rounded density (sigma in the integral bound)."""
        return float(sum(r.height * r.length for r in self.rectangles))


def staircase_decompose(spec: DensitySpec, delta: float) -> Staircase:
    """
    Decompose the rounded-up density of spec into stacked rectangles.

    Args:
        spec: A quasiconcave density
        delta: Rounding resolution, positive

    Returns:
        The staircase; its mass lies in [1, 1 + 2 delta]
    """
    if not delta > 0:
        raise DensityError(f"staircase resolution must be positive, got {delta}")
    if not getattr(spec, 'quasiconcave', False):
        raise DensityError(f"{spec.family} density is not quasiconcave, no staircase decomposition")

    levels = int(math.ceil(spec.phi() / delta))
    rectangles: List[Rectangle] = []
    current = None
    height = 0.0
    for j in range(1, levels + 1):
        interval = spec.superlevel_interval((j - 1) * delta)
        if interval is None:
            break
        if interval == current:
            height += delta
            continue
        if current is not None:
            rectangles.append(Rectangle(height, *current))
        current, height = interval, delta
    if current is not None:
        rectangles.append(Rectangle(height, *current))
    return Staircase(tuple(rectangles), float(delta))
