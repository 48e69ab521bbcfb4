"""
Two disjoint uniform blocks of equal mass; the non-quasiconcave family.
"""

from typing import Any, Dict, Sequence, Tuple

import numpy as np

from ..errors import DensityError
from .base_density import DensitySpec


class BimodalUniformDensity(DensitySpec):
    """Mass 1/2 spread uniformly on each of two disjoint intervals."""

    family = "bimodal"
    quasiconcave = False

    def __init__(self, blocks: Sequence[Sequence[float]]):
        if len(blocks) != 2:
            raise DensityError(f"bimodal density needs exactly two blocks, got {len(blocks)}")
        (a1, b1), (a2, b2) = sorted((float(a), float(b)) for a, b in blocks)
        if not (a1 < b1 < a2 < b2):
            raise DensityError(f"bimodal blocks must be disjoint nonempty intervals, got {blocks}")
        self.blocks: Tuple[Tuple[float, float], Tuple[float, float]] = ((a1, b1), (a2, b2))
        super().__init__(a1, b2)

    def _heights(self) -> Tuple[float, float]:
        return tuple(0.5 / (b - a) for a, b in self.blocks)

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        for (a, b), height in zip(self.blocks, self._heights()):
            out = np.where((x >= a) & (x <= b), height, out)
        return out

    def phi(self) -> float:
        return max(self._heights())

    def mean(self) -> float:
        return sum(0.25 * (a + b) for a, b in self.blocks)

    def _sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        pick = rng.random(size) < 0.5
        u = rng.random(size)
        (a1, b1), (a2, b2) = self.blocks
        return np.where(pick, a1 + (b1 - a1) * u, a2 + (b2 - a2) * u)

    def params(self) -> Dict[str, Any]:
        return {'blocks': [list(block) for block in self.blocks]}
