"""
Experiment configuration.

An ExperimentConfig carries everything a moments/sweep/tail/path-trade run
needs. Files are YAML (JSON is accepted, being a YAML subset); command-line
flags override file values through with_overrides.
"""

import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ..data.generator import FAMILIES, InstanceFamily
from ..densities.perturbation import DENSITY_FAMILIES
from ..errors import ConfigError
from ..pareto.counting import ENGINES
from ..solutions.solution_set import DEFAULT_ENUMERATION_CAP

logger = logging.getLogger(__name__)

FORMATS = ('csv', 'json')


@dataclass
class ExperimentConfig:
    """Configuration of one experiment run."""
    family: str = "hypercube"
    density: str = "uniform"
    d: int = 1
    n_values: List[int] = field(default_factory=lambda: [6, 8, 10])
    phi_values: List[float] = field(default_factory=lambda: [1.0, 2.0, 4.0])
    c: int = 2
    trials: int = 200
    seed: int = 0
    engine: str = "auto"

    # explicit families and zero-preserving block sizes
    m: Optional[int] = None
    block_sizes: Optional[List[int]] = None
    max_resamples: int = 20

    # concentration tail: thresholds are multiples of s_1 unless absolute
    thresholds: List[float] = field(default_factory=lambda: [1.0, 2.0, 4.0])
    absolute_thresholds: bool = False

    # path trading: AS graph description (JSON/YAML file)
    graph: Optional[str] = None

    confidence: float = 0.99
    workers: int = 1
    cap: int = DEFAULT_ENUMERATION_CAP
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.density not in DENSITY_FAMILIES:
            raise ConfigError(f"unknown density {self.density!r}; expected one of {', '.join(DENSITY_FAMILIES)}")
        if self.engine not in ENGINES:
            raise ConfigError(f"unknown engine {self.engine!r}; expected one of {', '.join(ENGINES)}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}; expected csv or json")
        for name in ('n_values', 'phi_values', 'thresholds'):
            if not getattr(self, name):
                raise ConfigError(f"{name} must not be empty")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if self.d < 1:
            raise ConfigError(f"d must be at least 1, got {self.d}")
        if self.c < 1:
            raise ConfigError(f"c must be at least 1, got {self.c}")
        if any(phi <= 0 for phi in self.phi_values):
            raise ConfigError(f"phi values must be positive, got {self.phi_values}")
        if any(n < self.d + 1 for n in self.n_values):
            raise ConfigError(f"every n must be at least d + 1 = {self.d + 1}, got {self.n_values}")
        if not 0.0 < self.confidence < 1.0:
            raise ConfigError(f"confidence must lie in (0, 1), got {self.confidence}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentConfig':
        if not isinstance(data, dict):
            raise ConfigError(f"configuration must be a mapping, got {type(data).__name__}")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_file(cls, path) -> 'ExperimentConfig':
        path = Path(path)
        try:
            with path.open('r', encoding='utf-8') as fh:
                data = yaml.safe_load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read configuration {path}: {exc}") from None
        except yaml.YAMLError as exc:
            raise ConfigError(f"configuration {path} is not valid YAML: {exc}") from None
        logger.info("loaded configuration from %s", path)
        return cls.from_dict(data or {})

    def with_overrides(self, **overrides) -> 'ExperimentConfig':
        """Copy with every non-None override applied."""
        data = asdict(self)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return self.from_dict(data)

    def family_for(self, n: int, phi: float) -> InstanceFamily:
        """Instance family of one (n, phi) cell."""
        block_sizes = self.block_sizes if self.block_sizes is not None and sum(self.block_sizes) == n else None
        return InstanceFamily(name=self.family, n=n, d=self.d, density=self.density, phi=phi,
                              m=self.m, block_sizes=block_sizes, max_resamples=self.max_resamples)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
