"""Tests for the zero-preserving witness, its certificates and reconstruction."""

import itertools

import numpy as np
import pytest

from src.checks import CheckContext, CheckManager, default_checks, flip_pattern_errors
from src.data.generator import InstanceFamily, InstanceGenerator
from src.errors import WitnessPreconditionError
from src.model.events import working_epsilon_zp
from src.model.instance import Instance, TableAdversarial
from src.model.solution import Solution
from src.pareto.counting import pareto_count, pareto_set
from src.solutions.solution_set import ExplicitSolutionSet
from src.witness.masking import alternative_realization, zp_constraints
from src.witness.reconstruct import shifted_box
from src.witness.replay import zp_certificate_count_replay
from src.witness.witness import extract_certificate
from src.witness.zero_preserving import (
    ZPBookkeeping, ZPCertificate, flip_matrix, witness_zp, witness_zp_reconstruct, zp_matrices,
    zp_shift_vector,
)

PARTITION = [list(range(7)), list(range(7, 14))]


def two_block_instance():
    """x = 0...0 and y = x with bit 1 set; y is better in objective 0, x in the adversarial one."""
    x = Solution.zeros(14)
    y = x.flip(1)
    V = np.zeros((2, 14))
    V[0, :7] = [0.1, -0.5, 0.2, 0.3, 0.4, 0.6, 0.7]
    V[1, 7:] = [0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75]
    inst = Instance(V, TableAdversarial({x: 0.0, y: 1.0}), ExplicitSolutionSet([x, y]))
    return inst, x, y


def test_single_objective_matches_plain_witness():
    inst = InstanceGenerator(InstanceFamily('hypercube', n=6, d=1)).generate(seed=4).instance
    for x in pareto_set(inst).solutions():
        result, cert = witness_zp(inst, [range(6)], x)
        plain = extract_certificate(inst, x)
        assert result == frozenset({x})
        assert cert.columns == plain.columns
        assert cert.I_star == plain.I_star


def test_recursion_on_two_blocks():
    inst, x, y = two_block_instance()
    assert pareto_count(inst) == 2
    result, cert = witness_zp(inst, PARTITION, x)
    assert result == frozenset({x})
    assert cert.I_star == (0, 7, 1, 2, 3, 8)
    assert cert.i_stars == (3, 8)
    assert cert.bookkeeping == ZPBookkeeping((2, 1), (1, 0))
    assert cert.columns == (x.flip(0, 7), y, x.flip(2), x)
    assert cert.bookkeeping.column_labels() == ((1, 2), (1, 1), (2, 1), (2, 0))
    assert cert.column_index(2, 0) == 3
    assert cert.recursed()
    assert ZPCertificate.from_dict(cert.to_dict()) == cert


def test_second_solution_finishes_in_one_call():
    inst, _, y = two_block_instance()
    result, cert = witness_zp(inst, PARTITION, y)
    assert result == frozenset({y})
    assert cert.bookkeeping == ZPBookkeeping((1, 1), (0,))
    assert not cert.recursed()


def test_two_block_reconstruction_and_matrices():
    inst, x, _ = two_block_instance()
    eps = working_epsilon_zp(inst, PARTITION)
    assert eps == 0.125
    _, cert = witness_zp(inst, PARTITION, x)
    A = cert.restricted()
    u = zp_shift_vector(cert.I_star, A, cert.i_stars, 14)
    assert u == x.flip(3, 8)
    box = shifted_box(inst, x, u, eps)
    assert box.tolist() == [-0.375, -0.375]
    assert witness_zp_reconstruct(inst, PARTITION, cert.I_star, A, cert.bookkeeping, box, u) == frozenset({x})

    blocks = zp_matrices(cert, PARTITION, u)
    assert [b.rows for b in blocks] == [(0, 1, 2, 3), (7, 8)]
    assert all(b.independent() for b in blocks)
    assert blocks[0].P.shape == (4, 2)
    assert blocks[1].P.shape == (2, 0)
    for k, block in enumerate(PARTITION):
        M = flip_matrix(cert, PARTITION, k)
        assert flip_pattern_errors(M, [x.bits[i] for i in cert.I_star if i in block]) == []


def test_reconstruction_rejects_a_foreign_bookkeeping():
    inst, x, _ = two_block_instance()
    eps = working_epsilon_zp(inst, PARTITION)
    _, cert = witness_zp(inst, PARTITION, x)
    A = cert.restricted()
    u = zp_shift_vector(cert.I_star, A, cert.i_stars, 14)
    box = shifted_box(inst, x, u, eps)
    wrong = ZPBookkeeping((1, 1), (0,))
    assert witness_zp_reconstruct(inst, PARTITION, cert.I_star, A, wrong, box, u) == frozenset()


def test_two_block_checks_and_replay():
    inst, _, _ = two_block_instance()
    manager = CheckManager(default_checks(zero_preserving=True))
    assert manager.run(CheckContext(inst, PARTITION)) == []
    replay = zp_certificate_count_replay(inst, PARTITION)
    assert replay.consistent
    assert replay.pareto_count == 2


@pytest.mark.parametrize("seed", range(3))
def test_random_zero_preserving_instances(seed):
    family = InstanceFamily('zp-explicit', n=14, d=2)
    generated = InstanceGenerator(family).generate(seed=seed)
    inst, partition = generated.instance, generated.partition
    assert partition == family.partition()
    for k, block in enumerate(partition):
        off_block = [i for i in range(inst.n) if i not in block]
        assert np.all(inst.coefficients[k, off_block] == 0.0)
    manager = CheckManager(default_checks(zero_preserving=True))
    violations = manager.run(CheckContext(inst, partition, seed=seed))
    assert violations == [], [v.to_dict() for v in violations]
    assert zp_certificate_count_replay(inst, partition).consistent


def test_zero_preserving_preconditions():
    inst, x, _ = two_block_instance()
    with pytest.raises(WitnessPreconditionError):
        witness_zp(inst, [list(range(6)), list(range(6, 14))], x)
    outside = Solution.zeros(14).flip(5)
    with pytest.raises(WitnessPreconditionError):
        witness_zp(inst, PARTITION, outside)


def product_instance(seed, d, patterns):
    """
    Zero-preserving instance on blocks of size d(d+1)+1 whose solution set is
    a product of a few random patterns per block; shared block patterns make
    the witness restart often.
    """
    rng = np.random.default_rng(seed)
    size = d * (d + 1) + 1
    n = d * size
    partition = [list(range(k * size, (k + 1) * size)) for k in range(d)]
    choices = [rng.choice(2 ** size, size=patterns, replace=False) for _ in range(d)]
    solutions = [Solution.from_string(''.join(format(int(v), f"0{size}b") for v in combo))
                 for combo in itertools.product(*choices)]
    V = np.zeros((d, n))
    for k, block in enumerate(partition):
        V[k, block] = rng.uniform(-1.0, 1.0, size=size)
    values = rng.uniform(-1.0, 1.0, size=len(solutions))
    adversarial = TableAdversarial({x: float(v) for x, v in zip(solutions, values)})
    return Instance(V, adversarial, ExplicitSolutionSet(solutions)), partition


@pytest.mark.parametrize("seed", range(4))
def test_zero_preserving_masking_keeps_the_reconstruction(seed):
    inst, partition = product_instance(seed, 2, 4)
    eps = working_epsilon_zp(inst, partition)
    rng = np.random.default_rng(seed)
    for x in pareto_set(inst).solutions():
        _, cert = witness_zp(inst, partition, x)
        A = cert.restricted()
        u = zp_shift_vector(cert.I_star, A, cert.i_stars, inst.n)
        box = shifted_box(inst, x, u, eps)
        blocks = zp_matrices(cert, partition, u)
        other = alternative_realization(inst, zp_constraints(blocks), rng)
        for k, block in enumerate(partition):
            off_block = [i for i in range(inst.n) if i not in block]
            assert np.all(other.coefficients[k, off_block] == 0.0)
        for block in blocks:
            rows = list(block.rows)
            assert other.coefficients[block.k, rows] @ block.revealed == pytest.approx(
                inst.coefficients[block.k, rows] @ block.revealed, abs=1e-12)
        back = witness_zp_reconstruct(other, partition, cert.I_star, A, cert.bookkeeping, box, u)
        assert back == frozenset({x})


@pytest.mark.slow
def test_zero_preserving_witness_at_scale():
    recursions = 0
    for seed in range(500):
        d = 2 if seed % 2 == 0 else 3
        inst, partition = product_instance(seed, d, 4 if d == 2 else 3)
        for x in pareto_set(inst).solutions():
            result, cert = witness_zp(inst, partition, x)
            assert result == frozenset({x}), seed
            assert cert.x == x
            recursions += cert.recursed()
    assert recursions >= 50
