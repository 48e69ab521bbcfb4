"""Tests for solution sets, AS-graph paths and polynomial linearisation."""

import itertools

import networkx as nx
import numpy as np
import pytest

from src.densities.uniform import UniformDensity
from src.errors import EnumerationCapError, ModelError, WitnessPreconditionError
from src.model.instance import LinearAdversarial
from src.model.solution import Solution
from src.pareto.bruteforce import pareto_mask
from src.pareto.counting import pareto_count
from src.solutions.paths import ASGraph, valid_paths
from src.solutions.polynomial import MonomialSystem, linearize_polynomial
from src.solutions.solution_set import (
    ExplicitSolutionSet, HypercubeSolutionSet, quotient_solutions, restrict, solution_set_from_dict,
)
from src.witness.witness import witness

GRAPH = {
    'vertices': [{'id': 's', 'as': 1}, {'id': 'a', 'as': 1}, {'id': 'b', 'as': 2},
                 {'id': 'c', 'as': 2}, {'id': 'd', 'as': 3}, {'id': 't', 'as': 3}],
    'edges': [{'u': 's', 'v': 'a'}, {'u': 's', 'v': 'b'}, {'u': 'a', 'v': 'b'},
              {'u': 'a', 'v': 'c'}, {'u': 'b', 'v': 'c'}, {'u': 'c', 'v': 'd'},
              {'u': 'b', 'v': 'd'}, {'u': 'd', 'v': 't'}, {'u': 'c', 'v': 't'},
              {'u': 'a', 'v': 'd'}],
    's': 's',
    't': 't',
}


def oracle_paths(graph: ASGraph):
    """Valid paths by filtering every simple s-t path."""
    found = set()
    for path in nx.all_simple_paths(graph.graph, graph.s, graph.t):
        labels = [graph.label(v) for v in path]
        if all(a <= b for a, b in zip(labels, labels[1:])) and set(labels) == set(range(1, graph.k + 1)):
            found.add(graph.incidence(path))
    return found


def test_hypercube_enumerates_in_lexicographic_order():
    cube = HypercubeSolutionSet(3)
    rows = cube.as_array()
    assert len(cube) == 8
    assert rows.shape == (8, 3)
    assert [str(x) for x in cube][:3] == ["000", "001", "010"]
    assert rows[-1].tolist() == [1, 1, 1]
    assert Solution.from_string("101") in cube


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError) as info:
        HypercubeSolutionSet(5).as_array(cap=16)
    assert info.value.size == 32
    assert info.value.cap == 16


def test_explicit_set_parsing_and_duplicates():
    parsed = ExplicitSolutionSet.from_lines("# header\n010\n\n111\n")
    assert [str(x) for x in parsed] == ["010", "111"]
    assert parsed.to_lines() == "010\n111\n"
    with pytest.raises(ModelError):
        ExplicitSolutionSet(["01", "01"])
    with pytest.raises(ModelError):
        ExplicitSolutionSet(["01", "011"])
    with pytest.raises(ModelError):
        ExplicitSolutionSet([])
    assert len(ExplicitSolutionSet([], n=3)) == 0


def test_restrict_keeps_agreeing_members():
    cube = HypercubeSolutionSet(4)
    sub = restrict(cube, (3, 0), Solution.from_string("1001"))
    members = [str(x) for x in sub]
    assert members == ["1001", "1011", "1101", "1111"]
    assert restrict(cube, (), Solution.zeros(4)) is cube
    with pytest.raises(ModelError):
        restrict(cube, (0, 1), (1,))


def test_quotient_keeps_minimum_adversarial_value():
    base = ExplicitSolutionSet(["110", "111", "011"])
    merged, table = quotient_solutions(base, [0, 1], LinearAdversarial([1.0, 2.0, 3.0]))
    assert [str(x) for x in merged] == ["11", "01"]
    assert table.value(Solution.from_string("11")) == 3.0
    assert table.value(Solution.from_string("01")) == 5.0


def test_descriptor_round_trip():
    cube = HypercubeSolutionSet(3)
    again = solution_set_from_dict(cube.to_dict())
    assert isinstance(again, HypercubeSolutionSet) and again.n == 3
    with pytest.raises(ModelError):
        solution_set_from_dict({'kind': 'matroid'})


def test_valid_paths_match_simple_path_oracle():
    graph = ASGraph.from_dict(GRAPH)
    paths = valid_paths(graph)
    assert graph.k == 3
    assert graph.m == 10
    assert set(paths) == oracle_paths(graph)
    assert len(paths) == len(set(paths)) > 0
    # s-a-d skips AS 2 and must not appear
    assert graph.incidence(['s', 'a', 'd', 't']) not in set(paths)


def test_random_graphs_match_oracle():
    rng = np.random.default_rng(11)
    for trial in range(10):
        labels = [1, 1, 2, 2, 2, 3, 3]
        vertices = [(f"v{i}", a) for i, a in enumerate(labels)]
        edges = [{'u': f"v{i}", 'v': f"v{j}"} for i, j in itertools.combinations(range(7), 2)
                 if rng.random() < 0.5]
        graph = ASGraph(vertices, edges, "v0", "v6")
        assert set(valid_paths(graph)) == oracle_paths(graph), f"trial {trial}"


def test_graph_without_valid_path():
    graph = ASGraph([('s', 1), ('a', 1), ('t', 2)], [{'u': 's', 'v': 'a'}], 's', 't')
    assert len(valid_paths(graph)) == 0


def test_graph_validation():
    with pytest.raises(ModelError):
        ASGraph([('s', 1), ('t', 2)], [{'u': 's', 'v': 'x'}], 's', 't')
    with pytest.raises(ModelError):
        ASGraph([('s', 2), ('t', 2)], [], 's', 't')
    with pytest.raises(ModelError):
        ASGraph([('s', 1), ('t', 2)], [{'u': 's', 'v': 't', 'length': 2.0}], 's', 't')


def test_path_costs_split_by_as():
    graph = ASGraph.from_dict(GRAPH)
    x = graph.incidence(['s', 'a', 'c', 'd', 't'])
    lengths = [0.1 * (j + 1) for j in range(graph.m)]
    # intra edges used: s-a (AS1, edge 0), c-d crosses, d-t (AS3, edge 7); a-c crosses
    assert graph.edge_as(0) == 1
    assert graph.edge_as(3) is None
    assert graph.path_costs(x, lengths) == pytest.approx((0.1, 0.0, 0.8))


def test_linearisation_reproduces_polynomial_values():
    system = MonomialSystem(
        (((0, 1), (2,)), ((0,), (1, 2), ())),
        weight_densities=((UniformDensity(0.5, 0.5),) * 2, (UniformDensity(0.5, 0.5),) * 3),
    )
    cube = HypercubeSolutionSet(3)
    patterns, problem = linearize_polynomial(cube, system, LinearAdversarial([0.1, 0.2, 0.3]))
    assert system.total == 5
    assert system.blocks() == ((0, 1), (2, 3, 4))
    assert problem.spec.is_zp_normal_form
    assert problem.spec.partition() == ((0, 1), (2, 3, 4))

    rng = np.random.default_rng(5)
    weights = system.sample_weights(rng)
    inst = problem.realize(weights)
    original = system.nonlinear_values(cube.as_array(), weights)
    indicator = system.indicators(cube.as_array())
    for row, x in enumerate(cube):
        y = Solution.from_array(indicator[row])
        assert y in patterns
        assert x in problem.preimage[y.bits]
        assert inst.evaluate(y).linear == pytest.approx(tuple(original[row]))


def test_linearisation_keeps_best_adversarial_value():
    system = MonomialSystem((((0, 1),), ((2,),)))
    cube = HypercubeSolutionSet(3)
    _, problem = linearize_polynomial(cube, system, LinearAdversarial([0.1, 0.2, -0.3]))
    # pattern (0, 1) means x2 = 1 and not both x0, x1; the best such x is 001
    assert problem.adversarial.value(Solution.from_string("01")) == pytest.approx(-0.3)
    assert not problem.spec.is_zp_normal_form


def test_monomial_weights_must_live_in_unit_interval():
    with pytest.raises(ModelError):
        MonomialSystem((((0,),),), weight_densities=((UniformDensity(0.0, 0.5),),))


def polynomial_pareto_count(solution_set, system, adversarial, weights):
    rows = solution_set.as_array()
    points = np.column_stack([system.nonlinear_values(rows, weights), adversarial.values(rows)])
    return int(np.count_nonzero(pareto_mask(points)))


def test_single_monomial_over_the_diagonal():
    diagonal = ExplicitSolutionSet(["00", "11"])
    system = MonomialSystem((((0, 1),),))
    adversarial = LinearAdversarial([0.1, 0.2])
    patterns, problem = linearize_polynomial(diagonal, system, adversarial)
    assert sorted(str(y) for y in patterns) == ["0", "1"]

    inst = problem.realize([np.array([0.5])])
    assert (inst.n, inst.d) == (1, 1)
    assert inst.evaluate(Solution.from_string("1")).linear == (0.5,)
    assert inst.evaluate(Solution.from_string("1")).adversarial == pytest.approx(0.3)
    assert pareto_count(inst) == 1
    assert polynomial_pareto_count(diagonal, system, adversarial, [[0.5]]) == 1
    with pytest.raises(WitnessPreconditionError):
        witness(inst, Solution.from_string("0"))


def test_linearisation_matches_brute_force_on_one_objective():
    system = MonomialSystem((((0, 1), (2,)),), weight_densities=((UniformDensity(0.5, 1.0),) * 2,))
    cube = HypercubeSolutionSet(3)
    for draw in range(100):
        rng = np.random.default_rng(draw)
        adversarial = LinearAdversarial(rng.uniform(-1.0, 1.0, size=3))
        _, problem = linearize_polynomial(cube, system, adversarial)
        weights = system.sample_weights(rng)
        expected = polynomial_pareto_count(cube, system, adversarial, weights)
        assert pareto_count(problem.realize(weights)) == expected, draw


def random_monomial_system(rng, n):
    rows = []
    for _ in range(int(rng.integers(1, 4))):
        row = []
        for _ in range(int(rng.integers(1, 4))):
            size = int(rng.integers(0, 4))
            row.append(tuple(sorted(rng.choice(n, size=size, replace=False).tolist())))
        rows.append(tuple(row))
    densities = tuple((UniformDensity(0.5, 1.0),) * len(row) for row in rows)
    return MonomialSystem(tuple(rows), weight_densities=densities)


@pytest.mark.parametrize("seed", range(25))
def test_linearisation_preserves_pareto_cardinality(seed):
    rng = np.random.default_rng(1000 + seed)
    n = 8
    size = int(rng.integers(1, 2 ** n + 1))
    picks = rng.choice(2 ** n, size=size, replace=False)
    solutions = ExplicitSolutionSet([Solution.from_string(format(int(v), f"0{n}b")) for v in picks])
    system = random_monomial_system(rng, n)
    adversarial = LinearAdversarial(rng.uniform(-1.0, 1.0, size=n))
    _, problem = linearize_polynomial(solutions, system, adversarial)
    weights = system.sample_weights(rng)
    assert pareto_count(problem.realize(weights)) == polynomial_pareto_count(
        solutions, system, adversarial, weights)
