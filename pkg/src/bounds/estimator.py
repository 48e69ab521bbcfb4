"""
Monte-Carlo estimate of the probability that k linear combinations of
independent phi-bounded variables land in a box chosen by the others.

X_1..X_n are drawn from their densities, (Y, Z) = A X with Y the first
m-k rows and Z the last k, and a trial hits when Z lies in the half-open
box [C(Y), C(Y) + eps). Trials run in fixed-size blocks seeded from the
master seed, so the estimate does not depend on the worker count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from ..densities.base_density import DensitySpec
from ..errors import ModelError, RankDeficientError
from ..utils.seeds import trial_rng
from ..witness.linalg import rank_full
from .formulas import box_probability_bound

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 10 ** 6
BLOCK_SIZE = 50_000

# Maps the Y values of a block (shape (T, m-k)) to box corners (shape (T, k))
CornerMap = Callable[[np.ndarray], np.ndarray]


def wilson_interval(hits: int, trials: int, confidence: float = 0.99) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2.0))
    p = hits / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    margin = z * np.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    return max(0.0, center - margin), min(1.0, center + margin)


@dataclass(frozen=True)
class ProbabilityEstimate:
    kind = "prob-check"

    hits: int
    trials: int
    ci_low: float
    ci_high: float
    bound: float
    quasiconcave: bool

    @property
    def estimate(self) -> float:
        return self.hits / self.trials if self.trials else 0.0

    @property
    def halfwidth(self) -> float:
        return (self.ci_high - self.ci_low) / 2.0

    def within_bound(self, slack: float = 3.0) -> bool:
        """estimate - slack * halfwidth <= bound."""
        return self.estimate - slack * self.halfwidth <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            'estimate': self.estimate, 'hits': self.hits, 'trials': self.trials,
            'ci_low': self.ci_low, 'ci_high': self.ci_high,
            'bound': self.bound, 'quasiconcave': self.quasiconcave,
        }

    def rows(self) -> List[Dict[str, Any]]:
        return [self.to_dict()]


def constant_box(corner: Sequence[float]) -> CornerMap:
    """Corner map that ignores Y."""
    corner = np.asarray(corner, dtype=np.float64)

    def corners(y: np.ndarray) -> np.ndarray:
        return np.broadcast_to(corner, (y.shape[0], corner.size))

    return corners


def step_box(eps: float, offset: float = 0.0) -> CornerMap:
    """Corner map putting every Z_j into the grid cell of the first Y coordinate plus offset."""

    def corners(y: np.ndarray) -> np.ndarray:
        base = np.floor(y[:, :1] / eps) * eps if y.shape[1] else np.zeros((y.shape[0], 1))
        return base + offset

    return corners


def _block_hits(A: np.ndarray, densities: Sequence[DensitySpec], k: int, C: CornerMap,
                eps: float, size: int, seed: int, block: int) -> int:
    rng = trial_rng(seed, block)
    X = np.column_stack([spec.sample(rng, size) for spec in densities])
    combos = X @ A.T
    m = A.shape[0]
    Y, Z = combos[:, :m - k], combos[:, m - k:]
    corner = np.asarray(C(Y), dtype=np.float64).reshape(size, -1)
    if corner.shape[1] == 1 and k > 1:
        corner = np.repeat(corner, k, axis=1)
    inside = np.all((Z >= corner) & (Z < corner + eps), axis=1)
    return int(np.count_nonzero(inside))


def estimate_hypercube_prob(A, densities: Sequence[DensitySpec], k: int, C: CornerMap, eps: float,
                            trials: int = DEFAULT_TRIALS, seed: int = 0, workers: int = 1,
                            confidence: float = 0.99) -> ProbabilityEstimate:
    """
    Estimate Pr[(Z_1..Z_k) in C(Y_1..Y_{m-k})] with a Wilson interval.

    Args:
        A: Full-rank m x n matrix with entries in {-1, 0, 1}
        densities: One density per variable
        k: Number of located combinations (the last k rows of A)
        C: Corner map, see CornerMap
        eps: Side length of the box
        trials: Number of samples
        seed: Master seed
        workers: Threads evaluating blocks

    Returns:
        The estimate, its interval and the matching bound (quasiconcave
        when every density is quasiconcave, general otherwise)
    """
    A = np.asarray(A)
    if A.ndim != 2:
        raise ModelError(f"A must be a matrix, got shape {A.shape}")
    m, n = A.shape
    if not np.all(np.isin(A, (-1, 0, 1))):
        raise ModelError("A must have entries in {-1, 0, 1}")
    if len(densities) != n:
        raise ModelError(f"need {n} densities, got {len(densities)}")
    if not 1 <= k <= m <= n:
        raise ModelError(f"need 1 <= k <= m <= n, got k={k}, m={m}, n={n}")
    if eps < 0:
        raise ModelError(f"eps must be nonnegative, got {eps}")
    if not rank_full(A):
        raise RankDeficientError(f"A ({m}x{n}) does not have full rank")
    A = A.astype(np.float64)

    sizes = [BLOCK_SIZE] * (trials // BLOCK_SIZE)
    if trials % BLOCK_SIZE:
        sizes.append(trials % BLOCK_SIZE)
    jobs = [(A, densities, k, C, eps, size, seed, b) for b, size in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(lambda job: _block_hits(*job), jobs))
    else:
        hits = [_block_hits(*job) for job in jobs]
    total = int(sum(hits))

    quasiconcave = all(getattr(spec, 'quasiconcave', False) for spec in densities)
    phi = max(spec.phi() for spec in densities)
    bound = box_probability_bound(n, k, phi, eps, quasiconcave) if eps > 0 else 0.0
    low, high = wilson_interval(total, trials, confidence)
    logger.debug("hypercube probability: %d/%d hits, bound %.4g", total, trials, bound)
    return ProbabilityEstimate(total, trials, low, high, bound, quasiconcave)


def random_full_rank(m: int, n: int, rng: np.random.Generator, attempts: int = 100) -> np.ndarray:
    """Random {-1, 0, 1} matrix of full rank m."""
    for _ in range(attempts):
        A = rng.integers(-1, 2, size=(m, n))
        if rank_full(A):
            return A
    raise RankDeficientError(f"no full-rank {m}x{n} matrix after {attempts} draws")
