"""
Instance model: solutions, objectives, dominance, epsilon grids and good events.
"""

from .solution import (
    IndexTuple, Solution, first_free_index, restrict_vector, tuple_intersect,
    tuple_minus, tuple_subset, tuple_union, validate_index_tuple,
)
from .instance import (
    AdversarialObjective, Evaluation, Instance, LinearAdversarial, ObjectiveVector,
    TableAdversarial, adversarial_from_dict, dominates, evaluate,
)
from .grid import EpsilonGrid, eps_below, epsilon_box, is_power_of_two_eps
from .events import (
    has_exact_ties, min_pairwise_gap, min_partition_gap, ok_event, okz_event,
    validate_partition, working_epsilon, working_epsilon_zp,
)

__all__ = [
    'IndexTuple', 'Solution', 'first_free_index', 'restrict_vector', 'tuple_intersect',
    'tuple_minus', 'tuple_subset', 'tuple_union', 'validate_index_tuple',
    'AdversarialObjective', 'Evaluation', 'Instance', 'LinearAdversarial', 'ObjectiveVector',
    'TableAdversarial', 'adversarial_from_dict', 'dominates', 'evaluate',
    'EpsilonGrid', 'eps_below', 'epsilon_box', 'is_power_of_two_eps',
    'has_exact_ties', 'min_pairwise_gap', 'min_partition_gap', 'ok_event', 'okz_event',
    'validate_partition', 'working_epsilon', 'working_epsilon_zp',
]
