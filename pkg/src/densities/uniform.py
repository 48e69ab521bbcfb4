"""
Uniform density on [center - width/2, center + width/2].
"""

from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..errors import DensityError
from .base_density import DensitySpec


class UniformDensity(DensitySpec):
    """Uniform density of height 1/width."""

    family = "uniform"
    quasiconcave = True

    def __init__(self, center: float, width: float):
        if not width > 0:
            raise DensityError(f"uniform width must be positive, got {width}")
        self.center = float(center)
        self.width = float(width)
        super().__init__(self.center - self.width / 2.0, self.center + self.width / 2.0)

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= self.lo) & (x <= self.hi)
        return np.where(inside, 1.0 / self.width, 0.0)

    def phi(self) -> float:
        return 1.0 / self.width

    def mean(self) -> float:
        return self.center

    def _sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        # inverse CDF
        return self.lo + self.width * rng.random(size)

    def superlevel_interval(self, level: float) -> Optional[Tuple[float, float]]:
        if level >= self.phi():
            return None
        return self.lo, self.hi

    def params(self) -> Dict[str, Any]:
        return {'center': self.center, 'width': self.width}
