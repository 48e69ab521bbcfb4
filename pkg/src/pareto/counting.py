"""
PO(V) counting with engine selection.
"""

import logging
from typing import Dict, Optional

from ..errors import EngineMismatchError
from ..model.instance import Instance
from .bruteforce import BruteForceEngine
from .engine import ParetoEngine, ParetoSet
from .nemhauser_ullmann import NemhauserUllmannEngine

logger = logging.getLogger(__name__)

ENGINES = ('auto', 'bruteforce', 'nu')


def get_engine(name: str, workers: int = 1, cap: Optional[int] = None) -> ParetoEngine:
    if name == 'bruteforce':
        return BruteForceEngine(workers=workers) if cap is None else BruteForceEngine(cap=cap, workers=workers)
    if name == 'nu':
        return NemhauserUllmannEngine()
    raise EngineMismatchError(f"unknown engine {name!r}; choose from {', '.join(ENGINES)}")


def select_engine(instance: Instance, engine: str = 'auto', workers: int = 1,
                  cap: Optional[int] = None) -> ParetoEngine:
    """Resolve 'auto' to nu when it applies, bruteforce otherwise."""
    if engine == 'auto':
        nu = NemhauserUllmannEngine()
        if nu.applicable(instance):
            return nu
        return get_engine('bruteforce', workers, cap)
    chosen = get_engine(engine, workers, cap)
    if not chosen.applicable(instance):
        raise EngineMismatchError(f"engine {engine!r} cannot handle {instance!r}")
    return chosen


def pareto_set(instance: Instance, engine: str = 'auto', workers: int = 1,
               cap: Optional[int] = None) -> ParetoSet:
    return select_engine(instance, engine, workers, cap).compute(instance)


def pareto_count(instance: Instance, engine: str = 'auto', workers: int = 1,
                 cap: Optional[int] = None) -> int:
    """PO(V) for the instance."""
    chosen = select_engine(instance, engine, workers, cap)
    count = chosen.count(instance)
    logger.debug("%s counted PO=%d for %r", chosen.name, count, instance)
    return count


def engine_summary() -> Dict[str, str]:
    return {
        'bruteforce': 'definitional filter, any instance up to the enumeration cap',
        'nu': 'Nemhauser-Ullmann list algorithm, d=1 hypercube with linear adversarial',
    }
