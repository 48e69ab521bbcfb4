"""
Pareto-set enumeration engines and PO(V) counting.
"""

from .engine import ParetoEngine, ParetoSet
from .bruteforce import BruteForceEngine, pareto_bruteforce, pareto_mask
from .nemhauser_ullmann import NemhauserUllmannEngine, nemhauser_ullmann
from .counting import ENGINES, engine_summary, get_engine, pareto_count, pareto_set, select_engine

__all__ = [
    'ParetoEngine', 'ParetoSet',
    'BruteForceEngine', 'pareto_bruteforce', 'pareto_mask',
    'NemhauserUllmannEngine', 'nemhauser_ullmann',
    'ENGINES', 'engine_summary', 'get_engine', 'pareto_count', 'pareto_set', 'select_engine',
]
