"""
Solution sets: explicit lists, hypercubes, valid AS paths and linearised polynomial problems.
"""

from .solution_set import (
    DEFAULT_ENUMERATION_CAP, ExplicitSolutionSet, HypercubeSolutionSet, RestrictedSolutionSet,
    SolutionSet, quotient_solutions, restrict, solution_set_from_dict,
)
from .paths import ASGraph, PathSolutionSet, valid_paths
from .polynomial import LinearizedProblem, MonomialSystem, linearize_polynomial

__all__ = [
    'DEFAULT_ENUMERATION_CAP', 'ExplicitSolutionSet', 'HypercubeSolutionSet', 'RestrictedSolutionSet',
    'SolutionSet', 'quotient_solutions', 'restrict', 'solution_set_from_dict',
    'ASGraph', 'PathSolutionSet', 'valid_paths',
    'LinearizedProblem', 'MonomialSystem', 'linearize_polynomial',
]
