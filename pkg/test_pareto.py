"""Tests for the Pareto engines and PO counting."""

import numpy as np
import pytest

from src.data.generator import InstanceFamily, InstanceGenerator
from src.errors import EngineMismatchError, EnumerationCapError
from src.model.instance import Instance, LinearAdversarial, dominates
from src.pareto.bruteforce import BruteForceEngine, pareto_bruteforce, pareto_mask
from src.pareto.counting import ENGINES, engine_summary, get_engine, pareto_count, pareto_set, select_engine
from src.pareto.nemhauser_ullmann import NemhauserUllmannEngine, nemhauser_ullmann
from src.solutions.solution_set import HypercubeSolutionSet


def random_knapsack(n, seed):
    rng = np.random.default_rng(seed)
    V = rng.uniform(-1, 1, size=(1, n))
    return Instance(V, LinearAdversarial(rng.uniform(-1, 1, size=n)), HypercubeSolutionSet(n))


def test_pareto_mask_keeps_duplicates():
    mask = pareto_mask(np.array([[1.0, 2.0], [1.0, 2.0], [2.0, 3.0]]))
    assert mask.tolist() == [True, True, False]
    assert pareto_mask(np.zeros((0, 2))).size == 0


def test_list_engine_keeps_exact_duplicates():
    weights, profits = [0.25, 0.25, 0.5], [0.375, 0.375, 0.125]
    front = nemhauser_ullmann(weights, profits)
    assert sorted(str(x) for x in front.solutions()) == ["000", "010", "100", "110", "111"]

    inst = Instance([weights], LinearAdversarial([-p for p in profits]), HypercubeSolutionSet(3))
    assert pareto_set(inst, engine='nu').solutions() == pareto_set(inst, engine='bruteforce').solutions()
    assert pareto_count(inst, engine='nu') == 5


def test_pareto_mask_matches_definition():
    rng = np.random.default_rng(4)
    points = rng.uniform(size=(60, 3))
    mask = pareto_mask(points)
    for i, p in enumerate(points):
        beaten = any(np.all(q <= p) and np.any(q < p) for q in points)
        assert mask[i] == (not beaten)


@pytest.mark.parametrize("seed", range(8))
def test_nemhauser_ullmann_agrees_with_bruteforce(seed):
    inst = random_knapsack(7, seed)
    brute = pareto_bruteforce(inst)
    nu = NemhauserUllmannEngine().compute(inst)
    assert nu.solutions() == brute.solutions()
    for x, vec in nu:
        assert vec.linear == pytest.approx(inst.evaluate(x).linear)
        assert vec.adversarial == pytest.approx(inst.evaluate(x).adversarial)


def test_nemhauser_ullmann_on_classic_knapsack():
    # items (weight, profit): (1, 1), (2, 3), (3, 2)
    front = nemhauser_ullmann([1.0, 2.0, 3.0], [1.0, 3.0, 2.0])
    # 001 and 101 are beaten by 110
    assert {str(x) for x in front.solutions()} == {"000", "100", "010", "110", "011", "111"}


def test_parallel_bruteforce_matches_serial():
    inst = InstanceGenerator(InstanceFamily('hypercube', n=9, d=2)).generate(seed=3).instance
    serial = BruteForceEngine(workers=1).compute(inst)
    parallel = BruteForceEngine(workers=3).compute(inst)
    assert [str(x) for x, _ in serial] == [str(x) for x, _ in parallel]


def test_front_is_mutually_non_dominated():
    inst = InstanceGenerator(InstanceFamily('explicit-random', n=8, d=2)).generate(seed=5).instance
    front = pareto_set(inst)
    vectors = [vec for _, vec in front]
    assert not any(dominates(a, b) for a in vectors for b in vectors)
    ev = inst.evaluation
    for row in range(ev.m):
        x = ev.solution(row)
        if x not in front:
            assert any(dominates(vec, ev.objective_vector(row)) for vec in vectors)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_degenerate_families(d):
    singleton = InstanceGenerator(InstanceFamily('singleton', n=d + 3, d=d))
    pair = InstanceGenerator(InstanceFamily('incomparable-pair', n=d + 3, d=d))
    for trial in range(5):
        assert pareto_count(singleton.generate(seed=1, trial=trial).instance) == 1
        assert pareto_count(pair.generate(seed=1, trial=trial).instance) == 2


def test_engine_selection():
    knapsack = random_knapsack(5, 0)
    assert select_engine(knapsack).name == 'nu'
    assert pareto_count(knapsack, engine='nu') == pareto_count(knapsack, engine='bruteforce')
    two_objectives = InstanceGenerator(InstanceFamily('hypercube', n=5, d=2)).generate(seed=0).instance
    assert select_engine(two_objectives).name == 'bruteforce'
    with pytest.raises(EngineMismatchError):
        pareto_count(two_objectives, engine='nu')
    with pytest.raises(EngineMismatchError):
        get_engine('simplex')
    assert set(engine_summary()) == set(ENGINES) - {'auto'}


def test_bruteforce_enforces_cap():
    inst = InstanceGenerator(InstanceFamily('hypercube', n=5, d=2)).generate(seed=0).instance
    with pytest.raises(EnumerationCapError):
        pareto_count(inst, engine='bruteforce', cap=10)


def test_pareto_set_dataframe_layout(tmp_path):
    inst = InstanceGenerator(InstanceFamily('hypercube', n=5, d=2)).generate(seed=2).instance
    front = pareto_set(inst)
    frame = front.to_dataframe()
    assert list(frame.columns) == ['solution', 'V1', 'V2', 'V3']
    assert len(frame) == front.count
    path = tmp_path / "front.csv"
    front.to_csv(path)
    assert path.read_text().splitlines()[0] == "solution,V1,V2,V3"


@pytest.mark.slow
def test_nemhauser_ullmann_oracle_equivalence_at_scale():
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 17))
        density = 'uniform' if seed % 2 else 'triangular'
        family = InstanceFamily('hypercube', n=n, d=1, density=density, phi=float(rng.choice([1.0, 4.0])))
        inst = InstanceGenerator(family).generate(seed=seed).instance
        assert NemhauserUllmannEngine().compute(inst).solutions() == pareto_bruteforce(inst).solutions(), seed
