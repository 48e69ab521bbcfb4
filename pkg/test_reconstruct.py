"""Tests for reconstruction from certificates, the count replay and masking."""

import numpy as np
import pytest

from src.data.generator import InstanceFamily, InstanceGenerator
from src.model.events import working_epsilon
from src.model.instance import Instance, LinearAdversarial
from src.model.solution import Solution
from src.pareto.counting import pareto_set
from src.solutions.solution_set import ExplicitSolutionSet
from src.witness.masking import alternative_realization, certificate_constraints
from src.witness.reconstruct import shifted_box, witness_reconstruct
from src.witness.replay import certificate_count_replay
from src.witness.shift import build_qk, shift_vector
from src.witness.witness import extract_certificate


def random_instance(n, d, seed, family='hypercube'):
    return InstanceGenerator(InstanceFamily(family, n=n, d=d)).generate(seed=seed).instance


@pytest.mark.parametrize("d,n", [(1, 6), (2, 7), (3, 8)])
def test_reconstruction_returns_x_for_both_shifts(d, n):
    for seed in range(3):
        inst = random_instance(n, d, seed)
        eps = working_epsilon(inst)
        for x in pareto_set(inst).solutions():
            cert = extract_certificate(inst, x, eps=eps)
            A = cert.restricted()
            for u in (shift_vector(cert.I_star, A, n), Solution.zeros(n)):
                box = shifted_box(inst, x, u, eps)
                assert witness_reconstruct(inst, cert.I_star, A, box, u) == x


def test_box_corner_lies_below_the_shifted_value():
    inst = random_instance(6, 2, 0)
    eps = working_epsilon(inst)
    x = sorted(pareto_set(inst).solutions())[0]
    u = Solution.zeros(6)
    box = shifted_box(inst, x, u, eps)
    value = np.array(inst.evaluate(x).linear)
    assert np.all(box < value)
    assert np.all(value <= box + eps)


def test_reconstruction_sentinel_when_nothing_matches():
    solutions = ExplicitSolutionSet(["000", "011", "101"])
    inst = Instance([[0.1, 0.2, 0.4]], LinearAdversarial([0.3, -0.2, 0.1]), solutions)
    A = np.array([[1, 1], [1, 1]])
    assert witness_reconstruct(inst, (0, 1), A, [0.0], Solution.zeros(3)) is None


@pytest.mark.parametrize("d,family", [(1, 'hypercube'), (2, 'hypercube'), (2, 'explicit-random')])
def test_count_replay_is_consistent(d, family):
    for seed in range(3):
        inst = random_instance(d + 6, d, seed, family)
        result = certificate_count_replay(inst)
        assert result.consistent, result.to_dict()
        assert result.pareto_count == len(pareto_set(inst))
        assert result.failures == []


@pytest.mark.parametrize("d,n", [(1, 6), (2, 7)])
def test_adjacent_box_never_reconstructs_x(d, n):
    for seed in range(3):
        inst = random_instance(n, d, seed)
        eps = working_epsilon(inst)
        for x in pareto_set(inst).solutions():
            cert = extract_certificate(inst, x, eps=eps)
            A = cert.restricted()
            u = shift_vector(cert.I_star, A, n)
            box = shifted_box(inst, x, u, eps)
            assert witness_reconstruct(inst, cert.I_star, A, box, u, eps=eps) == x
            for k in range(d):
                for step in (-eps, eps):
                    other = box.copy()
                    other[k] += step
                    got = witness_reconstruct(inst, cert.I_star, A, other, u, eps=eps)
                    assert got != x
                    if got is not None:
                        ev = inst.evaluation
                        value = ev.shifted_linear(u.as_array())[ev.row_of(got)]
                        assert np.all(value > other) and np.all(value <= other + eps)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("d,n", [(1, 7), (2, 8)])
def test_masked_realization_keeps_revealed_combinations(d, n, seed):
    inst = random_instance(n, d, seed)
    eps = working_epsilon(inst)
    rng = np.random.default_rng(seed)
    for x in pareto_set(inst).solutions():
        cert = extract_certificate(inst, x, eps=eps)
        A = cert.restricted()
        u = shift_vector(cert.I_star, A, inst.n)
        shift = build_qk(cert.I_star, A, u)
        constraints = certificate_constraints(shift)
        other = alternative_realization(inst, constraints, rng)
        rows = list(cert.I_star)
        outside = [i for i in range(inst.n) if i not in rows]
        assert np.array_equal(other.coefficients[:, outside], inst.coefficients[:, outside])
        assert np.all(np.abs(other.coefficients) <= 1.0)
        for k in range(inst.d):
            Q = shift.q(k + 1)
            assert other.coefficients[k, rows] @ Q == pytest.approx(inst.coefficients[k, rows] @ Q, abs=1e-12)
        box = shifted_box(inst, x, u, eps)
        assert witness_reconstruct(other, cert.I_star, A, box, u) == x


@pytest.mark.slow
def test_pipeline_identity_at_scale():
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(1, 4))
        n = int(rng.integers(d + 2, 11))
        family = 'hypercube' if seed % 2 else 'explicit-random'
        inst = random_instance(n, d, seed, family)
        eps = working_epsilon(inst)
        for x in pareto_set(inst).solutions():
            cert = extract_certificate(inst, x, eps=eps)
            A = cert.restricted()
            u = shift_vector(cert.I_star, A, n)
            assert witness_reconstruct(inst, cert.I_star, A, shifted_box(inst, x, u, eps), u) == x, seed
