"""
Monte-Carlo moments of the number of Pareto-optimal solutions.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import norm

from ..data.generator import InstanceGenerator
from ..pareto.counting import pareto_count
from .config import ExperimentConfig

logger = logging.getLogger(__name__)


@dataclass
class MomentEstimate:
    """PO samples of one (n, phi) cell and the statistics derived from them."""
    n: int
    phi: float
    counts: np.ndarray
    resamples: int = 0
    confidence: float = 0.99
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def trials(self) -> int:
        return int(self.counts.size)

    def _powers(self, c: int) -> np.ndarray:
        return self.counts.astype(np.float64) ** c

    def moment(self, c: int = 1) -> float:
        """Sample mean of PO^c."""
        return float(self._powers(c).mean())

    def halfwidth(self, c: int = 1) -> float:
        """Normal-approximation half width of the CI of E[PO^c]."""
        if self.trials < 2:
            return 0.0
        z = float(norm.ppf(0.5 + self.confidence / 2.0))
        return z * float(self._powers(c).std(ddof=1)) / np.sqrt(self.trials)

    def moment_ci(self, c: int = 1) -> Tuple[float, float]:
        mean, h = self.moment(c), self.halfwidth(c)
        return mean - h, mean + h

    @property
    def mean(self) -> float:
        return self.moment(1)

    @property
    def variance(self) -> float:
        return float(self.counts.astype(np.float64).var(ddof=1)) if self.trials > 1 else 0.0

    def to_dict(self, c: int = 1) -> Dict[str, Any]:
        low, high = self.moment_ci(c)
        return {
            'n': self.n, 'phi': self.phi, 'trials': self.trials,
            'c': c, 'moment': self.moment(c), 'ci_low': low, 'ci_high': high,
            'mean': self.mean, 'variance': self.variance, 'resamples': self.resamples,
        }


def sample_counts(cfg: ExperimentConfig, n: int, phi: float, cell: int = 0,
                  trials: Optional[int] = None) -> MomentEstimate:
    """
    PO(V) for `trials` independent draws of one scenario.

    Raises EnumerationCapError when the family is not enumerable at n.
    """
    family = cfg.family_for(n, phi)
    generator = InstanceGenerator(family)
    trials = cfg.trials if trials is None else trials
    counts: List[int] = []
    resamples = 0
    for generated in generator.stream(cfg.seed, cell, trials):
        counts.append(pareto_count(generated.instance, engine=cfg.engine,
                                   workers=cfg.workers, cap=cfg.cap))
        resamples += generated.resamples
    if resamples:
        logger.debug("cell n=%d phi=%g needed %d resamples", n, phi, resamples)
    return MomentEstimate(n, phi, np.asarray(counts, dtype=np.int64), resamples, cfg.confidence,
                          {'family': family.name, 'density': family.density, 'd': family.d, 'cell': cell})


def estimate_moment(cfg: ExperimentConfig, n: int, phi: float, c: int = 1,
                    cell: int = 0) -> Tuple[float, Tuple[float, float]]:
    """
    Monte-Carlo estimate of E[PO^c] over cfg.trials draws.

    Deterministic given cfg.seed and cell.

    Returns:
        (mean of PO^c, (ci_low, ci_high))
    """
    estimate = sample_counts(cfg, n, phi, cell)
    return estimate.moment(c), estimate.moment_ci(c)
