"""
Symmetric triangular density with peak height 1/half_width.
"""

import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..errors import DensityError
from .base_density import DensitySpec


class TriangularDensity(DensitySpec):
    """Triangle on [peak - h, peak + h]; quasiconcave with mode at the peak."""

    family = "triangular"
    quasiconcave = True

    def __init__(self, peak: float, half_width: float):
        if not half_width > 0:
            raise DensityError(f"triangular half-width must be positive, got {half_width}")
        self.peak = float(peak)
        self.half_width = float(half_width)
        super().__init__(self.peak - self.half_width, self.peak + self.half_width)

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        h = self.half_width
        return np.maximum(0.0, (h - np.abs(x - self.peak)) / (h * h))

    def phi(self) -> float:
        return 1.0 / self.half_width

    def mean(self) -> float:
        return self.peak

    def _sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random(size)
        h = self.half_width
        left = self.peak - h + h * np.sqrt(2.0 * u)
        right = self.peak + h - h * np.sqrt(2.0 * (1.0 - u))
        return np.where(u < 0.5, left, right)

    def superlevel_interval(self, level: float) -> Optional[Tuple[float, float]]:
        if level >= self.phi():
            return None
        if level <= 0.0:
            return self.lo, self.hi
        h = self.half_width
        # (h - |x - peak|) / h^2 > level  <=>  |x - peak| < h (1 - level h)
        reach = h * (1.0 - level * h)
        if not math.isfinite(reach) or reach <= 0.0:
            return None
        return self.peak - reach, self.peak + reach

    def params(self) -> Dict[str, Any]:
        return {'peak': self.peak, 'halfwidth': self.half_width}
