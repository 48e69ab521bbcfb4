"""
Instance Generator

Seeded generator for phi-smooth instances. The adversarial part of an
instance (solution set, adversarial objective, densities and zero pattern)
is fixed once per scenario from a setup generator; every trial then draws
a fresh coefficient matrix from the densities.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..densities.perturbation import PerturbationSpec, make_density
from ..errors import ConfigError
from ..model.events import has_exact_ties
from ..model.instance import AdversarialObjective, Instance, LinearAdversarial, TableAdversarial
from ..model.solution import IndexTuple, Solution
from ..solutions.solution_set import DEFAULT_ENUMERATION_CAP, ExplicitSolutionSet, HypercubeSolutionSet, SolutionSet
from ..utils.seeds import trial_rng

logger = logging.getLogger(__name__)

FAMILIES = (
    'hypercube', 'explicit-random', 'zp-hypercube', 'zp-explicit',
    'knapsack', 'singleton', 'incomparable-pair',
)


@dataclass
class InstanceFamily:
    """Configuration of one instance family."""
    name: str = "hypercube"
    n: int = 6
    d: int = 1
    density: str = "uniform"
    phi: float = 2.0

    # explicit families: number of solutions (default min(2^n, 4n))
    m: Optional[int] = None

    # zero-preserving families: block sizes |P_k| (default: even split)
    block_sizes: Optional[List[int]] = None

    max_resamples: int = 20

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ConfigError(f"unknown instance family {self.name!r}; expected one of {', '.join(FAMILIES)}")
        if self.d < 1:
            raise ConfigError(f"d must be at least 1, got {self.d}")
        if self.n < self.d + 1:
            raise ConfigError(f"n = {self.n} must be at least d + 1 = {self.d + 1}")
        if self.name == 'knapsack' and self.d != 1:
            raise ConfigError("the knapsack family has exactly one perturbed objective")
        if self.block_sizes is not None and sum(self.block_sizes) != self.n:
            raise ConfigError(f"block sizes {self.block_sizes} do not add up to n = {self.n}")

    @property
    def zero_preserving(self) -> bool:
        return self.name.startswith('zp-')

    def partition(self) -> Tuple[IndexTuple, ...]:
        sizes = self.block_sizes
        if sizes is None:
            base, extra = divmod(self.n, self.d)
            sizes = [base + (1 if k < extra else 0) for k in range(self.d)]
        blocks, start = [], 0
        for size in sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return tuple(blocks)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class Scenario:
    """The adversary's choices: everything except the coefficient values."""
    family: InstanceFamily
    solution_set: SolutionSet
    adversarial: AdversarialObjective
    spec: PerturbationSpec
    partition: Optional[Tuple[IndexTuple, ...]] = None


@dataclass
class GeneratedInstance:
    instance: Instance
    spec: PerturbationSpec
    partition: Optional[Tuple[IndexTuple, ...]] = None
    resamples: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'instance': self.instance.to_dict(),
            'perturbation': self.spec.to_dict(),
            'partition': [list(b) for b in self.partition] if self.partition is not None else None,
            'resamples': self.resamples,
            'metadata': self.metadata,
        }


def _random_solutions(n: int, m: int, rng: np.random.Generator) -> ExplicitSolutionSet:
    """m distinct random bit vectors in lexicographic order."""
    m = min(m, 2 ** n)
    chosen = rng.choice(2 ** n, size=m, replace=False) if n < 63 else rng.integers(0, 2 ** 62, size=m)
    rows = [Solution(tuple((int(v) >> (n - 1 - i)) & 1 for i in range(n))) for v in sorted(set(int(c) for c in chosen))]
    return ExplicitSolutionSet(rows, n)


class InstanceGenerator:
    """
    Seeded instance source for one family.

    setup(rng) fixes the adversary's choices; realize(scenario, rng) draws
    coefficients, resampling when exact ties occur.
    """

    def __init__(self, family: Optional[InstanceFamily] = None):
        self.family = family or InstanceFamily()

    def setup(self, rng: np.random.Generator) -> Scenario:
        fam = self.family
        n, d = fam.n, fam.d
        lo = 0.0 if fam.name in ('knapsack', 'incomparable-pair') else -1.0

        def row(count: int) -> List:
            return [make_density(fam.density, fam.phi, rng, lo=lo) for _ in range(count)]

        partition = fam.partition() if fam.zero_preserving else None
        if partition is not None:
            spec = PerturbationSpec.from_partition(partition, [row(len(block)) for block in partition])
        else:
            spec = PerturbationSpec.full([row(n) for _ in range(d)])

        if fam.name in ('explicit-random', 'zp-explicit'):
            solution_set: SolutionSet = _random_solutions(n, fam.m or min(2 ** n, 4 * n), rng)
            values = rng.uniform(-1.0, 1.0, size=len(solution_set))
            adversarial: AdversarialObjective = TableAdversarial(
                {x: float(v) for x, v in zip(solution_set, values)})
        elif fam.name == 'singleton':
            solution_set = ExplicitSolutionSet([Solution.from_array(rng.integers(0, 2, size=n))])
            adversarial = LinearAdversarial.constant(n)
        elif fam.name == 'incomparable-pair':
            solution_set = ExplicitSolutionSet([Solution.zeros(n), Solution.zeros(n).flip(0)])
            adversarial = LinearAdversarial([-1.0] + [0.0] * (n - 1))
        elif fam.name == 'knapsack':
            solution_set = HypercubeSolutionSet(n)
            adversarial = LinearAdversarial(-rng.uniform(0.0, 1.0, size=n))
        else:
            solution_set = HypercubeSolutionSet(n)
            adversarial = LinearAdversarial(rng.uniform(-1.0, 1.0, size=n))
        return Scenario(fam, solution_set, adversarial, spec, partition)

    def realize(self, scenario: Scenario, rng: np.random.Generator) -> GeneratedInstance:
        """
        Draw coefficients until the realization has no exact ties.

        Solution sets above the enumeration cap are not tie-checked; only the
        list engine can count them and it never enumerates the set.
        """
        checkable = len(scenario.solution_set) <= DEFAULT_ENUMERATION_CAP
        for attempt in range(self.family.max_resamples + 1):
            V = scenario.spec.sample(rng)
            instance = Instance(V, scenario.adversarial, scenario.solution_set)
            if not checkable or not has_exact_ties(instance, scenario.partition):
                return GeneratedInstance(instance, scenario.spec, scenario.partition, attempt,
                                         {'family': self.family.name})
            logger.debug("exact tie in %s draw, resampling (attempt %d)", self.family.name, attempt + 1)
        raise ConfigError(f"{self.family.name} draws keep producing exact ties; "
                          f"the density family cannot separate this solution set")

    def generate(self, seed: int, cell: int = 0, trial: int = 0) -> GeneratedInstance:
        """One instance; the scenario depends on (seed, cell), the coefficients also on trial."""
        scenario = self.setup(trial_rng(seed, cell))
        return self.realize(scenario, trial_rng(seed, cell, trial + 1))

    def stream(self, seed: int, cell: int = 0, trials: Optional[int] = None) -> Iterator[GeneratedInstance]:
        """
        Realizations of one scenario.

        Args:
            seed: Master seed
            cell: Cell index of the experiment grid
            trials: Number of instances (infinite if None)

        Yields:
            GeneratedInstance per trial
        """
        scenario = self.setup(trial_rng(seed, cell))
        trial = 0
        while trials is None or trial < trials:
            yield self.realize(scenario, trial_rng(seed, cell, trial + 1))
            trial += 1
