"""
Experiment harness: configuration, moment estimation, sweeps, tails and path trading.
"""

from .config import FORMATS, ExperimentConfig
from .moments import MomentEstimate, estimate_moment, sample_counts
from .sweep import bound_variants, grid_cells, run_cell, sweep
from .tail import TailReport, TailRow, concentration_tail
from .path_trade import PathTradeReport, PathTradeScenario, build_scenario, path_trade_experiment

__all__ = [
    'FORMATS', 'ExperimentConfig',
    'MomentEstimate', 'estimate_moment', 'sample_counts',
    'bound_variants', 'grid_cells', 'run_cell', 'sweep',
    'TailReport', 'TailRow', 'concentration_tail',
    'PathTradeReport', 'PathTradeScenario', 'build_scenario', 'path_trade_experiment',
]
