"""
Perturbation specs: one density (or a deterministic zero) per coefficient.

Also holds the density factory used by the generators and the
zero-preserving normal form, which rewrites an instance so that every
column is perturbed in exactly one objective.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from ..errors import DensityError, ModelError
from ..model.instance import Instance
from ..model.solution import IndexTuple, Solution
from ..solutions.solution_set import ExplicitSolutionSet, SolutionSet, quotient_solutions
from .base_density import ZERO, DensitySpec, ZeroSpec
from .bimodal import BimodalUniformDensity
from .gaussian import TruncatedGaussianDensity
from .triangular import TriangularDensity
from .uniform import UniformDensity

logger = logging.getLogger(__name__)

Entry = Union[DensitySpec, ZeroSpec]

DENSITY_FAMILIES = ('uniform', 'triangular', 'tgauss', 'bimodal')


def density_from_dict(data: Dict[str, Any]) -> Entry:
    family = data.get('family')
    try:
        if family == 'zero':
            return ZERO
        if family == 'uniform':
            return UniformDensity(data['center'], data['width'])
        if family == 'triangular':
            return TriangularDensity(data['peak'], data['halfwidth'])
        if family == 'tgauss':
            return TruncatedGaussianDensity(data['mean'], data['sigma'],
                                            data.get('lo', -1.0), data.get('hi', 1.0))
        if family == 'bimodal':
            return BimodalUniformDensity(data['blocks'])
    except KeyError as exc:
        raise DensityError(f"{family} density is missing parameter {exc.args[0]!r}") from None
    raise DensityError(f"unknown density family: {family!r}")


def _gaussian_sigma_for(phi: float, mean: float, lo: float, hi: float) -> float:
    def gap(sigma: float) -> float:
        return TruncatedGaussianDensity(mean, sigma, lo, hi).phi() - phi
    upper = 1e3
    if gap(upper) > 0:
        raise DensityError(f"no truncated gaussian on [{lo}, {hi}] has phi as small as {phi}")
    return float(brentq(gap, 1e-9, upper, xtol=1e-15))


def make_density(family: str, phi: float, rng: np.random.Generator,
                 lo: float = -1.0, hi: float = 1.0) -> DensitySpec:
    """
    Density of the given family with supremum phi, randomly placed in [lo, hi].

    Args:
        family: One of DENSITY_FAMILIES
        phi: Target supremum
        rng: Generator used only for the placement
        lo: Left end of the allowed placement window
        hi: Right end of the allowed placement window

    Returns:
        The density spec
    """
    if not phi > 0:
        raise DensityError(f"phi must be positive, got {phi}")
    span = hi - lo
    if family == 'uniform':
        width = 1.0 / phi
        if width > span:
            raise DensityError(f"uniform density with phi={phi} does not fit in [{lo}, {hi}]")
        return UniformDensity(rng.uniform(lo + width / 2, hi - width / 2), width)
    if family == 'triangular':
        h = 1.0 / phi
        if 2 * h > span:
            raise DensityError(f"triangular density with phi={phi} does not fit in [{lo}, {hi}]")
        return TriangularDensity(rng.uniform(lo + h, hi - h), h)
    if family == 'tgauss':
        mean = rng.uniform(lo, hi)
        return TruncatedGaussianDensity(mean, _gaussian_sigma_for(phi, mean, lo, hi), lo, hi)
    if family == 'bimodal':
        width = 1.0 / (2.0 * phi)
        mid = (lo + hi) / 2.0
        if width >= span / 2:
            raise DensityError(f"bimodal density with phi={phi} does not fit in [{lo}, {hi}]")
        a1 = rng.uniform(lo, mid - width)
        a2 = rng.uniform(mid, hi - width)
        return BimodalUniformDensity([(a1, a1 + width), (a2, a2 + width)])
    raise DensityError(f"unknown density family: {family!r}")


@dataclass(frozen=True)
class PerturbationSpec:
    """A d x n grid of densities and deterministic zeros."""
    entries: Tuple[Tuple[Entry, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or not rows[0]:
            raise ModelError("perturbation spec must have at least one row and column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ModelError("perturbation spec rows have different lengths")
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def full(cls, densities: Sequence[Sequence[DensitySpec]]) -> 'PerturbationSpec':
        return cls(tuple(tuple(row) for row in densities))

    @classmethod
    def from_partition(cls, partition: Sequence[Sequence[int]],
                       densities: Sequence[Sequence[DensitySpec]]) -> 'PerturbationSpec':
        """Normal-form spec: row k carries densities[k][j] on the j-th index of P_k, zero elsewhere."""
        n = sum(len(block) for block in partition)
        rows = []
        for block, row_densities in zip(partition, densities):
            row: List[Entry] = [ZERO] * n
            for i, density in zip(sorted(block), row_densities):
                row[i] = density
            rows.append(tuple(row))
        return cls(tuple(rows))

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def mask(self) -> np.ndarray:
        """Boolean d x n matrix, True where the coefficient is perturbed."""
        return np.array([[not isinstance(e, ZeroSpec) for e in row] for row in self.entries], dtype=bool)

    @property
    def is_zp_normal_form(self) -> bool:
        return bool(np.all(self.mask.sum(axis=0) == 1))

    def partition(self) -> Tuple[IndexTuple, ...]:
        """Blocks P_k of a normal-form spec."""
        if not self.is_zp_normal_form:
            raise ModelError("spec is not in zero-preserving normal form")
        mask = self.mask
        return tuple(tuple(int(i) for i in np.flatnonzero(mask[k])) for k in range(self.d))

    def densities(self) -> List[DensitySpec]:
        return [e for row in self.entries for e in row if not isinstance(e, ZeroSpec)]

    def phi(self) -> float:
        return max((e.phi() for e in self.densities()), default=0.0)

    @property
    def quasiconcave(self) -> bool:
        return all(e.quasiconcave for e in self.densities())

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """Draw a d x n coefficient matrix, row by row."""
        V = np.zeros((self.d, self.n))
        for k, row in enumerate(self.entries):
            for i, entry in enumerate(row):
                if not isinstance(entry, ZeroSpec):
                    V[k, i] = entry.sample(rng)
        return V

    def to_dict(self) -> Dict[str, Any]:
        return {'d': self.d, 'n': self.n, 'entries': [[e.to_dict() for e in row] for row in self.entries]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PerturbationSpec':
        return cls(tuple(tuple(density_from_dict(e) for e in row) for row in data['entries']))


def _normal_form_columns(spec: PerturbationSpec) -> List[Tuple[int, int]]:
    """(k, i) pairs of the copy-blown-up columns that stay perturbed, block-major."""
    mask = spec.mask
    return [(k, i) for k in range(spec.d) for i in range(spec.n) if mask[k, i]]


def _copy_rows(rows: np.ndarray, columns: Sequence[Tuple[int, int]]) -> np.ndarray:
    return rows[:, [i for _, i in columns]]


def zp_normal_form(spec: PerturbationSpec, solution_set: SolutionSet) -> Tuple[PerturbationSpec, SolutionSet]:
    """
    Rewrite a zero-preserving spec so every column is perturbed exactly once.

    Each solution x becomes d copies (x, ..., x); copy k is read only by
    objective k. Copy columns whose coefficient is a deterministic zero are
    pruned, and solutions that coincide afterwards are merged.

    Returns:
        (normal-form spec, transformed solution set)
    """
    columns = _normal_form_columns(spec)
    if not columns:
        raise ModelError("spec perturbs no coefficient at all")
    rows = _copy_rows(solution_set.as_array(), columns)
    seen = {}
    for row in rows.tolist():
        seen.setdefault(tuple(row), None)
    new_set = ExplicitSolutionSet([Solution(bits) for bits in seen], n=len(columns))
    new_rows = []
    for k in range(spec.d):
        new_rows.append(tuple(spec.entries[k][i] if kk == k else ZERO for kk, i in columns))
    logger.debug("normal form: %d columns -> %d, %d solutions -> %d",
                 spec.d * spec.n, len(columns), len(solution_set), len(new_set))
    return PerturbationSpec(tuple(new_rows)), new_set


def zp_normal_form_instance(instance: Instance, spec: PerturbationSpec) -> Tuple[Instance, PerturbationSpec]:
    """
    Normal form of a concrete instance: coefficients and adversarial objective carried over.

    Merged solutions keep the minimum adversarial value.
    """
    if (spec.d, spec.n) != (instance.d, instance.n):
        raise ModelError(f"spec is {spec.d}x{spec.n}, instance is {instance.d}x{instance.n}")
    columns = _normal_form_columns(spec)
    new_spec, _ = zp_normal_form(spec, instance.solution_set)
    projected, adversarial = quotient_solutions(
        instance.solution_set, [i for _, i in columns], instance.adversarial)
    V = np.zeros((instance.d, len(columns)))
    for c, (k, i) in enumerate(columns):
        V[k, c] = instance.coefficients[k, i]
    return Instance(V, adversarial, projected), new_spec


def canonicalize_unperturbed(instance: Instance, spec: PerturbationSpec) -> Instance:
    """
    Drop the columns no objective perturbs and merge solutions that become equal.

    Merged classes keep the minimum adversarial value, so every Pareto-optimal
    class is represented by a Pareto-optimal solution of the original.
    """
    if (spec.d, spec.n) != (instance.d, instance.n):
        raise ModelError(f"spec is {spec.d}x{spec.n}, instance is {instance.d}x{instance.n}")
    keep = [int(i) for i in np.flatnonzero(spec.mask.any(axis=0))]
    if len(keep) == instance.n:
        return instance
    projected, adversarial = quotient_solutions(instance.solution_set, keep, instance.adversarial)
    return Instance(instance.coefficients[:, keep], adversarial, projected)
