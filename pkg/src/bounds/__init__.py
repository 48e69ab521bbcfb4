"""
Bound evaluators and the Monte-Carlo probability estimator.
"""

from .formulas import (
    BOUND_VARIANTS, BoundParams, LogValue, bound_smoothed_po, box_probability_bound,
    certificate_probability_bound, certificate_space_bound, concentration_bound,
    log2_concentration_bound, log2_moment_bound, log2_smoothed_po, log2_box_probability, ok_failure_bound,
)
from .estimator import (
    ProbabilityEstimate, constant_box, estimate_hypercube_prob, random_full_rank,
    step_box, wilson_interval,
)

__all__ = [
    'BOUND_VARIANTS', 'BoundParams', 'LogValue', 'bound_smoothed_po', 'box_probability_bound',
    'certificate_probability_bound', 'certificate_space_bound', 'concentration_bound',
    'log2_concentration_bound', 'log2_moment_bound', 'log2_smoothed_po', 'log2_box_probability',
    'ok_failure_bound',
    'ProbabilityEstimate', 'constant_box', 'estimate_hypercube_prob', 'random_full_rank',
    'step_box', 'wilson_interval',
]
