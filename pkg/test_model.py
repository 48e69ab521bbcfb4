"""Tests for solutions, instances, the epsilon grid and the good events."""

import math

import numpy as np
import pytest

from src.errors import ModelError
from src.model.events import (
    has_exact_ties, min_pairwise_gap, min_partition_gap, ok_event, okz_event,
    validate_partition, working_epsilon, working_epsilon_zp,
)
from src.model.grid import EpsilonGrid, eps_below, epsilon_box, is_power_of_two_eps
from src.model.instance import Instance, LinearAdversarial, ObjectiveVector, TableAdversarial, dominates
from src.model.solution import (
    Solution, first_free_index, restrict_vector, tuple_intersect, tuple_minus, tuple_subset,
    tuple_union, validate_index_tuple,
)
from src.solutions.solution_set import ExplicitSolutionSet, HypercubeSolutionSet


def make_instance(rows, adversarial=None, solutions=None):
    V = np.array(rows, dtype=float)
    n = V.shape[1]
    solution_set = HypercubeSolutionSet(n) if solutions is None else ExplicitSolutionSet(solutions)
    return Instance(V, adversarial or LinearAdversarial.constant(n), solution_set)


def test_solution_parsing_flipping_and_order():
    x = Solution.from_string("0110")
    assert x.n == 4
    assert str(x.flip(0, 3)) == "1111"
    assert str(x) == "0110"
    assert x.restrict((2, 0)) == (1, 0)
    assert x.first_difference(Solution.from_string("0100")) == 2
    assert x.first_difference(Solution.from_string("1110"), within=(3, 2, 1)) is None
    assert Solution.from_string("0011") < Solution.from_string("0100")
    assert Solution.zeros(3) == Solution((0, 0, 0))


def test_solution_rejects_non_bits():
    with pytest.raises(ModelError):
        Solution((0, 2))
    with pytest.raises(ModelError):
        Solution.from_string("01x")


def test_index_tuple_helpers_keep_order():
    assert tuple_union((3, 1), (1, 4, 0)) == (3, 1, 4, 0)
    assert tuple_minus((3, 1, 4), {1}) == (3, 4)
    assert tuple_intersect((5, 2, 7), [7, 5]) == (5, 7)
    assert tuple_subset((1, 2), (2, 3, 1))
    assert not tuple_subset((1, 9), (1, 2))
    assert first_free_index(5, (0, 1, 3)) == 2
    assert first_free_index(3, (0, 1, 2)) is None
    assert first_free_index(8, (4,), within=(6, 4, 5)) == 5
    assert restrict_vector("abcdef", (4, 0)) == ("e", "a")


def test_validate_index_tuple():
    assert validate_index_tuple([2, 0], 3) == (2, 0)
    with pytest.raises(ModelError):
        validate_index_tuple((1, 1), 3)
    with pytest.raises(ModelError):
        validate_index_tuple((3,), 3)


def test_instance_validation():
    with pytest.raises(ModelError):
        make_instance([[0.5], [0.25]])  # n = 1 < d + 1
    with pytest.raises(ModelError):
        make_instance([[0.5, 1.5]])
    with pytest.raises(ModelError):
        Instance([[0.1, 0.2, 0.3]], LinearAdversarial.constant(3), HypercubeSolutionSet(4))


def test_evaluate_with_shift():
    inst = make_instance([[0.5, -0.25, 0.125]], LinearAdversarial([1.0, 2.0, 3.0]))
    x = Solution.from_string("110")
    u = Solution.from_string("011")
    assert inst.evaluate(x).linear == (0.25,)
    shifted = inst.evaluate(x, u)
    # x - u = (1, 0, -1)
    assert shifted.linear == (0.5 - 0.125,)
    assert shifted.adversarial == 3.0


def test_dominates_is_strict():
    a = ObjectiveVector((0.1, 0.2), 1.0)
    b = ObjectiveVector((0.1, 0.3), 1.0)
    assert dominates(a, b)
    assert not dominates(b, a)
    assert not dominates(a, a)


def test_instance_json_round_trip_is_exact():
    rng = np.random.default_rng(3)
    V = rng.uniform(-1, 1, size=(2, 4))
    solutions = ["0001", "0110", "1011"]
    table = TableAdversarial({s: rng.uniform() for s in solutions})
    inst = make_instance(V, table, solutions)
    back = Instance.from_json(inst.to_json())
    assert np.array_equal(back.coefficients, inst.coefficients)
    for s in solutions:
        x = Solution.from_string(s)
        assert back.evaluate(x) == inst.evaluate(x)


def test_adversarial_ties_break_lexicographically():
    inst = make_instance([[0.5, 0.25]])
    ev = inst.evaluation
    # constant adversarial objective: the total order is the lexicographic one
    assert [str(ev.solution(int(r))) for r in np.argsort(ev.key(1))] == ["00", "01", "10", "11"]
    assert str(ev.solution(ev.argmin(np.ones(ev.m, dtype=bool), 1))) == "00"


def test_power_of_two_epsilons():
    assert is_power_of_two_eps(0.25)
    assert is_power_of_two_eps(0.5)
    assert not is_power_of_two_eps(0.3)
    assert not is_power_of_two_eps(1.0)
    assert eps_below(0.3) == 0.25
    assert eps_below(0.25) == 0.125
    assert eps_below(3.0) == 0.5
    with pytest.raises(ModelError):
        eps_below(0.0)


def test_grid_boxes_are_half_open_on_the_left():
    grid = EpsilonGrid(0.25, 1, 2)
    assert grid.corner([0.5]).tolist() == [0.25]
    assert grid.corner([0.3]).tolist() == [0.25]
    assert grid.corner([-0.1]).tolist() == [-0.25]
    assert epsilon_box(EpsilonGrid(0.125, 2, 3), [0.3, -0.125]).tolist() == [0.25, -0.25]
    assert grid.contains([0.25], [0.5])
    assert not grid.contains([0.5], [0.5])
    assert grid.boxes_per_axis == 16
    with pytest.raises(ModelError):
        EpsilonGrid(0.3, 1, 2)
    with pytest.raises(ModelError):
        grid.corner([2.5])


def test_ok_event_and_working_epsilon():
    inst = make_instance([[0.5, 0.25, -0.125]])
    assert min_pairwise_gap(inst) == 0.125
    assert ok_event(inst, 0.125)
    assert not ok_event(inst, 0.2)
    assert working_epsilon(inst) == 0.03125
    assert not has_exact_ties(inst)


def test_ok_event_needs_a_small_coefficient_per_row():
    inst = make_instance([[1.0, 0.5, 0.25], [-1.0, 1.0, -1.0]])
    assert not ok_event(inst, 1e-3)


def test_exact_ties_detected():
    inst = make_instance([[0.5, 0.5]])
    assert has_exact_ties(inst)
    assert min_pairwise_gap(inst) == 0.0


def test_partition_gap_ignores_pairs_equal_on_the_block():
    inst = make_instance([[0.5, 0.25, 0.0, 0.0], [0.0, 0.0, 0.375, -0.25]])
    partition = [[0, 1], [2, 3]]
    assert has_exact_ties(inst)
    assert not has_exact_ties(inst, partition)
    assert min_partition_gap(inst, partition) == 0.125
    assert okz_event(inst, partition, 0.125)
    assert not okz_event(inst, partition, 0.2)
    assert working_epsilon_zp(inst, partition) == 0.03125


def test_validate_partition_errors():
    assert validate_partition([[3, 1], [0, 2]], 4, 2) == ((1, 3), (0, 2))
    with pytest.raises(ModelError):
        validate_partition([[0, 1]], 4, 2)
    with pytest.raises(ModelError):
        validate_partition([[0, 1], [1, 2, 3]], 4, 2)
    with pytest.raises(ModelError):
        validate_partition([[0, 1], [2]], 4, 2)
    with pytest.raises(ModelError):
        validate_partition([[0, 1, 2, 3], []], 4, 2)


def test_min_gap_is_cached_and_finite():
    inst = make_instance([[0.3, -0.7]])
    gap = min_pairwise_gap(inst)
    assert math.isfinite(gap)
    assert inst.evaluation.cache['min_gap'] == gap
