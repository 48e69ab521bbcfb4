"""
Linearisation of polynomial objectives.

Objective t is a weighted sum of m_t monomials over the solution bits. One
new binary variable per monomial turns it into a linear objective over the
reachable indicator patterns; objective t only reads its own block of
variables. The adversarial objective of a pattern is the minimum original
adversarial value over the solutions producing it.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ModelError
from ..model.instance import AdversarialObjective, Instance, TableAdversarial
from ..model.solution import IndexTuple, Solution
from ..densities.base_density import ZERO, DensitySpec
from ..densities.perturbation import PerturbationSpec
from .solution_set import ExplicitSolutionSet, SolutionSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialSystem:
    """
    monomials[t][i] is the index subset whose product is indicator I^t_i.

    The empty subset is the constant 1. weight_densities, when given, has one
    density per monomial with support inside [0, 1].
    """
    monomials: Tuple[Tuple[IndexTuple, ...], ...]
    weight_densities: Optional[Tuple[Tuple[DensitySpec, ...], ...]] = None

    def __post_init__(self):
        monomials = tuple(tuple(tuple(int(i) for i in mono) for mono in row) for row in self.monomials)
        if not monomials:
            raise ModelError("a monomial system needs at least one objective")
        if any(len(row) == 0 for row in monomials):
            raise ModelError("every objective needs at least one monomial")
        object.__setattr__(self, 'monomials', monomials)
        if self.weight_densities is not None:
            densities = tuple(tuple(row) for row in self.weight_densities)
            if [len(r) for r in densities] != [len(r) for r in monomials]:
                raise ModelError("weight densities do not match the monomial layout")
            for row in densities:
                for density in row:
                    lo, hi = density.support
                    if lo < 0.0 or hi > 1.0:
                        raise ModelError(f"weight density {density!r} is not supported on [0, 1]")
            object.__setattr__(self, 'weight_densities', densities)

    @property
    def d(self) -> int:
        return len(self.monomials)

    def m(self, t: int) -> int:
        return len(self.monomials[t])

    @property
    def total(self) -> int:
        return sum(len(row) for row in self.monomials)

    def blocks(self) -> Tuple[IndexTuple, ...]:
        """Variable indices belonging to each objective in the linearised problem."""
        out, start = [], 0
        for row in self.monomials:
            out.append(tuple(range(start, start + len(row))))
            start += len(row)
        return tuple(out)

    def indicators(self, bits: np.ndarray) -> np.ndarray:
        """Indicator values of every monomial for each row of bits."""
        columns = []
        for row in self.monomials:
            for mono in row:
                if mono:
                    columns.append(np.all(bits[:, list(mono)] == 1, axis=1))
                else:
                    columns.append(np.ones(bits.shape[0], dtype=bool))
        return np.stack(columns, axis=1).astype(np.int8)

    def nonlinear_values(self, bits: np.ndarray, weights: Sequence[Sequence[float]]) -> np.ndarray:
        """Original polynomial objective values, shape (m, d)."""
        ind = self.indicators(bits).astype(np.float64)
        out = np.zeros((bits.shape[0], self.d))
        for t, block in enumerate(self.blocks()):
            out[:, t] = ind[:, list(block)] @ np.asarray(weights[t], dtype=np.float64)
        return out

    def sample_weights(self, rng: np.random.Generator) -> List[np.ndarray]:
        if self.weight_densities is None:
            raise ModelError("monomial system has no weight densities")
        return [np.array([dens.sample(rng) for dens in row]) for row in self.weight_densities]


@dataclass
class LinearizedProblem:
    """Everything of the linearised instance except the weight values."""
    solution_set: ExplicitSolutionSet
    adversarial: TableAdversarial
    system: MonomialSystem
    preimage: Dict[Tuple[int, ...], Tuple[Solution, ...]] = field(default_factory=dict)

    @property
    def spec(self) -> PerturbationSpec:
        """Zero-preserving spec: objective t perturbs only its own block."""
        n = self.system.total
        rows = []
        for t, block in enumerate(self.system.blocks()):
            row = [ZERO] * n
            if self.system.weight_densities is not None:
                for i, density in zip(block, self.system.weight_densities[t]):
                    row[i] = density
            rows.append(tuple(row))
        return PerturbationSpec(tuple(rows))

    def coefficients(self, weights: Sequence[Sequence[float]]) -> np.ndarray:
        V = np.zeros((self.system.d, self.system.total))
        for t, block in enumerate(self.system.blocks()):
            V[t, list(block)] = np.asarray(weights[t], dtype=np.float64)
        return V

    def realize(self, weights: Sequence[Sequence[float]]) -> Instance:
        # one variable per monomial, so n < d + 1 is possible
        return Instance(self.coefficients(weights), self.adversarial, self.solution_set,
                        witness_size=False)


def linearize_polynomial(solution_set: SolutionSet, system: MonomialSystem,
                         adversarial: AdversarialObjective) -> Tuple[ExplicitSolutionSet, LinearizedProblem]:
    """
    Linearise polynomial objectives over a solution set.

    Args:
        solution_set: Original feasible set
        system: Monomials of each objective
        adversarial: Original adversarial objective

    Returns:
        (set of reachable indicator patterns, linearised problem skeleton)
    """
    rows = solution_set.as_array()
    patterns = system.indicators(rows)
    values = adversarial.values(rows)
    best: Dict[Tuple[int, ...], float] = {}
    preimage: Dict[Tuple[int, ...], List[Solution]] = {}
    for bits, pattern, value in zip(rows.tolist(), patterns.tolist(), values.tolist()):
        key = tuple(pattern)
        if key not in best or value < best[key]:
            best[key] = value
        preimage.setdefault(key, []).append(Solution(tuple(bits)))
    new_set = ExplicitSolutionSet([Solution(k) for k in best], n=system.total)
    logger.debug("linearised %d solutions into %d patterns over %d variables",
                 len(rows), len(new_set), system.total)
    problem = LinearizedProblem(new_set, TableAdversarial(best), system,
                                {k: tuple(v) for k, v in preimage.items()})
    return new_set, problem
