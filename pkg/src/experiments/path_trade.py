"""
Path trading between autonomous systems.

Every AS that owns intra-AS edges is one objective and sees only the
lengths of its own edges; border edges cost nothing anywhere. Valid paths
that use the same intra-AS edges are therefore indistinguishable and are
merged before counting.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from ..densities.base_density import DensitySpec
from ..densities.perturbation import make_density
from ..errors import ModelError
from ..model.instance import LinearAdversarial
from ..pareto.bruteforce import pareto_mask
from ..reporting.stats import run_metadata
from ..solutions.paths import ASGraph, valid_paths
from ..solutions.solution_set import quotient_solutions
from ..utils.seeds import trial_rng
from .moments import MomentEstimate

logger = logging.getLogger(__name__)

Sampler = Union[DensitySpec, float]


@dataclass
class PathTradeScenario:
    """
    Valid paths of a graph, merged on their intra-AS edges, with one length source per edge.

    columns[c] is the edge index of column c of `rows`; objective_of[c] is
    the position of its AS in `ases`.
    """
    graph: ASGraph
    path_count: int
    ases: Tuple[int, ...]
    columns: Tuple[int, ...]
    objective_of: Tuple[int, ...]
    rows: np.ndarray
    samplers: Tuple[Sampler, ...]

    @property
    def d(self) -> int:
        return len(self.ases)

    @property
    def classes(self) -> int:
        return int(self.rows.shape[0])

    def draw_lengths(self, rng: np.random.Generator) -> np.ndarray:
        """Lengths of every edge; border edges get 0."""
        lengths = np.zeros(self.graph.m)
        for j, sampler in zip(self.columns, self.samplers):
            lengths[j] = sampler if isinstance(sampler, float) else sampler.sample(rng)
        return lengths

    def coefficients(self, lengths: Sequence[float]) -> np.ndarray:
        """d x |columns| zero-preserving coefficient matrix."""
        V = np.zeros((self.d, len(self.columns)))
        for c, (j, k) in enumerate(zip(self.columns, self.objective_of)):
            V[k, c] = lengths[j]
        return V

    def costs(self, lengths: Sequence[float]) -> np.ndarray:
        """(classes, d) matrix of per-AS path costs."""
        return self.rows.astype(np.float64) @ self.coefficients(lengths).T

    def pareto_count(self, lengths: Sequence[float]) -> int:
        if self.classes == 0:
            return 0
        if self.d == 0:
            return 1
        return int(np.count_nonzero(pareto_mask(self.costs(lengths))))


def build_scenario(graph: ASGraph, phi: float, density: str, rng: np.random.Generator) -> PathTradeScenario:
    """
    Fix the valid paths and a length source per intra-AS edge.

    Edges with a fixed length keep it, edges with a density use it, every
    other intra-AS edge gets a density of the given family on [0, 1].
    """
    paths = valid_paths(graph)
    ases = tuple(i for i in range(1, graph.k + 1) if graph.intra_edges(i))
    columns = tuple(j for i in ases for j in graph.intra_edges(i))
    objective_of = tuple(ases.index(graph.edge_as(j)) for j in columns)
    samplers: List[Sampler] = []
    for j in columns:
        if graph.lengths[j] is not None:
            samplers.append(float(graph.lengths[j]))
        elif graph.densities[j] is not None:
            samplers.append(graph.densities[j])
        else:
            samplers.append(make_density(density, phi, rng, lo=0.0, hi=1.0))

    if len(paths) and columns:
        merged, _ = quotient_solutions(paths, columns, LinearAdversarial.constant(graph.m))
        rows = merged.as_array()
    elif len(paths):
        rows = np.zeros((1, 0), dtype=np.int8)
    else:
        rows = np.zeros((0, len(columns)), dtype=np.int8)
    logger.debug("%r: %d valid paths in %d classes over %d objectives",
                 graph, len(paths), rows.shape[0], len(ases))
    return PathTradeScenario(graph, len(paths), ases, columns, objective_of, rows, tuple(samplers))


@dataclass
class PathTradeReport:
    graph: Dict[str, Any]
    estimate: MomentEstimate
    d: int
    path_count: int
    classes: int
    metadata: Dict[str, Any] = field(default_factory=dict)
    kind: str = 'path-trade'

    @property
    def no_path(self) -> bool:
        return self.path_count == 0

    def rows(self) -> List[Dict[str, Any]]:
        low, high = self.estimate.moment_ci(1)
        return [{
            'edges': self.estimate.n, 'phi': self.estimate.phi, 'd': self.d,
            'valid_paths': self.path_count, 'classes': self.classes,
            'trials': self.estimate.trials, 'mean': self.estimate.mean,
            'variance': self.estimate.variance, 'ci_low': low, 'ci_high': high,
            'min_po': int(self.estimate.counts.min()) if self.estimate.trials else 0,
            'max_po': int(self.estimate.counts.max()) if self.estimate.trials else 0,
        }]

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'rows': self.rows(), 'graph': self.graph, 'metadata': self.metadata}

    def format_report(self) -> str:
        row = self.rows()[0]
        lines = ["", "=" * 60, "PATH TRADING REPORT", "=" * 60,
                 f"Edges: {row['edges']}   ASes with own edges: {row['d']}",
                 f"Valid paths: {row['valid_paths']}   distinct intra-AS edge sets: {row['classes']}",
                 f"Trials: {row['trials']}   phi: {row['phi']:g}",
                 f"Mean PO: {row['mean']:.4f}  [{row['ci_low']:.4f}, {row['ci_high']:.4f}]",
                 f"PO range: {row['min_po']}..{row['max_po']}"]
        if self.no_path:
            lines.append("No valid path: PO is 0 in every trial")
        return "\n".join(lines)


def path_trade_experiment(graph: ASGraph, phi: float, trials: int, seed: int = 0,
                          density: str = "uniform", confidence: float = 0.99,
                          cell: int = 0) -> PathTradeReport:
    """
    Mean number of Pareto-optimal valid paths over `trials` length draws.

    Args:
        graph: AS graph; edges may fix their length or carry a density
        phi: Density bound of the generated edge densities
        trials: Number of length draws
        seed: Master seed
        density: Density family of edges without their own

    Returns:
        PathTradeReport; a graph without valid paths reports PO = 0
    """
    if trials < 1:
        raise ModelError(f"trials must be at least 1, got {trials}")
    started = time.time()
    scenario = build_scenario(graph, phi, density, trial_rng(seed, cell))
    counts = [scenario.pareto_count(scenario.draw_lengths(trial_rng(seed, cell, t + 1)))
              for t in range(trials)]
    estimate = MomentEstimate(graph.m, float(phi), np.asarray(counts, dtype=np.int64),
                              confidence=confidence)
    config = {'seed': seed, 'phi': phi, 'trials': trials, 'density': density}
    return PathTradeReport(graph.to_dict(), estimate, scenario.d, scenario.path_count,
                           scenario.classes, run_metadata(config, started))
