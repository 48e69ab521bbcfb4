"""
Gaussian density truncated to a sub-interval of [-1, 1] (all of it by default).
"""

import math
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.stats import norm

from ..errors import DensityError
from .base_density import DensitySpec

# Rejection sampling gives up after this many rounds without filling the batch
_MAX_REJECTION_ROUNDS = 10_000


class TruncatedGaussianDensity(DensitySpec):
    """Normal(mean, sigma) conditioned on [lo, hi]."""

    family = "tgauss"
    quasiconcave = True

    def __init__(self, mean: float, sigma: float, lo: float = -1.0, hi: float = 1.0):
        if not sigma > 0:
            raise DensityError(f"gaussian sigma must be positive, got {sigma}")
        super().__init__(lo, hi)
        if not self.lo <= mean <= self.hi:
            raise DensityError(f"gaussian mean must lie in [{self.lo}, {self.hi}], got {mean}")
        self.mu = float(mean)
        self.sigma = float(sigma)
        self.mass = float(norm.cdf((self.hi - self.mu) / self.sigma) - norm.cdf((self.lo - self.mu) / self.sigma))
        if self.mass <= 0.0:
            raise DensityError(f"gaussian({mean}, {sigma}) has no mass on [{self.lo}, {self.hi}]")

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= self.lo) & (x <= self.hi)
        return np.where(inside, norm.pdf(x, loc=self.mu, scale=self.sigma) / self.mass, 0.0)

    def phi(self) -> float:
        return float(norm.pdf(0.0, scale=self.sigma) / self.mass)

    def mean(self) -> float:
        a = (self.lo - self.mu) / self.sigma
        b = (self.hi - self.mu) / self.sigma
        return self.mu + self.sigma * float(norm.pdf(a) - norm.pdf(b)) / self.mass

    def _sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        out = np.empty(size)
        filled = 0
        for _ in range(_MAX_REJECTION_ROUNDS):
            if filled >= size:
                break
            draws = rng.normal(self.mu, self.sigma, size=max(2 * (size - filled), 8))
            draws = draws[(draws >= self.lo) & (draws <= self.hi)]
            take = min(draws.size, size - filled)
            out[filled:filled + take] = draws[:take]
            filled += take
        if filled < size:
            raise DensityError(f"rejection sampling for {self!r} did not converge")
        return out

    def superlevel_interval(self, level: float) -> Optional[Tuple[float, float]]:
        if level >= self.phi():
            return None
        if level <= 0.0:
            return self.lo, self.hi
        # pdf > level  <=>  (x - mu)^2 < 2 sigma^2 log(phi / level)
        reach = self.sigma * math.sqrt(2.0 * math.log(self.phi() / level))
        lo, hi = max(self.lo, self.mu - reach), min(self.hi, self.mu + reach)
        if lo >= hi:
            return None
        return lo, hi

    def params(self) -> Dict[str, Any]:
        params = {'mean': self.mu, 'sigma': self.sigma}
        if (self.lo, self.hi) != (-1.0, 1.0):
            params.update(lo=self.lo, hi=self.hi)
        return params
