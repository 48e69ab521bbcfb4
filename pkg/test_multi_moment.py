"""Tests for certificates of several Pareto-optimal solutions at once."""

import itertools

import pytest

from src.data.generator import InstanceFamily, InstanceGenerator
from src.errors import WitnessPreconditionError
from src.model.events import working_epsilon
from src.pareto.counting import pareto_set
from src.witness.linalg import rank_full
from src.witness.multi import witness_multi
from src.witness.reconstruct import shifted_box, witness_reconstruct
from src.witness.witness import extract_certificate


def instance_with_front(n, d, minimum):
    """First generated instance with at least `minimum` Pareto-optimal solutions."""
    generator = InstanceGenerator(InstanceFamily('hypercube', n=n, d=d))
    for seed in range(50):
        inst = generator.generate(seed=seed).instance
        front = sorted(pareto_set(inst).solutions())
        if len(front) >= minimum:
            return inst, front
    raise AssertionError("no instance with a large enough Pareto set")


def test_single_solution_matches_plain_certificate():
    inst, front = instance_with_front(6, 1, 1)
    for x in front:
        multi = witness_multi(inst, [x])
        plain = extract_certificate(inst, x)
        assert multi.c == 1
        assert multi.I_star == plain.I_star
        assert multi.certificates[0] == plain


def test_two_certificates_share_rows():
    n, d = 6, 1
    inst, front = instance_with_front(n, d, 2)
    eps = working_epsilon(inst)
    for pair in itertools.combinations(front[:4], 2):
        multi = witness_multi(inst, pair)
        assert len(multi.I_star) == 2 * (d + 1)
        assert len(set(multi.I_star)) == len(multi.I_star)
        assert len(set(multi.i_stars())) == 2
        Q = multi.q_prime(n)
        assert Q.shape == (d * 2 * (d + 1), d * 2 * (d + 1))
        assert rank_full(Q)
        for x, A, u in zip(pair, multi.matrices(), multi.shift_vectors(n)):
            assert A.shape == (len(multi.I_star), d + 1)
            box = shifted_box(inst, x, u, eps)
            assert witness_reconstruct(inst, multi.I_star, A, box, u) == x


def test_three_certificates_in_two_objectives():
    n, d = 12, 2
    inst, front = instance_with_front(n, d, 3)
    multi = witness_multi(inst, front[:3])
    assert len(multi.I_star) == 9
    assert rank_full(multi.q_prime(n))
    assert all(cert.I_star == multi.I_star[:len(cert.I_star)] for cert in multi.certificates)


def test_multi_certificate_needs_enough_indices():
    inst, front = instance_with_front(5, 1, 2)
    with pytest.raises(WitnessPreconditionError):
        witness_multi(inst, front[:2])
    with pytest.raises(WitnessPreconditionError):
        witness_multi(inst, [])
