"""
Concrete property checks run by `witness-check`.

Pattern helpers return a list of messages (empty when the matrix has the
expected shape); the checks wrap them into Violations per solution.
"""

import logging
from typing import List, Sequence

import numpy as np

from ..model.solution import Solution
from ..witness.linalg import rank_full
from ..witness.masking import alternative_realization, certificate_constraints, zp_constraints
from ..witness.multi import witness_multi
from ..witness.reconstruct import shifted_box, witness_reconstruct
from ..witness.replay import certificate_count_replay
from ..witness.shift import build_qk, q_prime, shift_vector
from ..witness.witness import Certificate, extract_certificate, witness
from ..witness.zero_preserving import (
    ZPCertificate, flip_matrix, witness_zp, witness_zp_reconstruct, zp_matrices, zp_shift_vector,
)
from .detector import CheckContext, PropertyCheck, Severity, Violation

logger = logging.getLogger(__name__)


def certificate_pattern_errors(cert: Certificate) -> List[str]:
    """
    Compare a certificate with its expected bit pattern.

    Rows of the input tuple agree with x everywhere. The row of the index
    chosen in column j holds the complement of x there and x in every later
    column. The last column is x restricted to I*.
    """
    A = cert.restricted()
    y = np.array(cert.x.restrict(cert.I_star), dtype=np.int8)
    errors = []
    if not np.array_equal(A[:, -1], y):
        errors.append("last column differs from x on I*")
    offset = len(cert.I_input)
    for row in range(offset):
        if not np.all(A[row] == y[row]):
            errors.append(f"input row {cert.I_star[row]} does not agree with x")
    for j in range(cert.d):
        row = offset + j
        if A[row, j] != 1 - y[row]:
            errors.append(f"diagonal entry for index {cert.I_star[row]} is not flipped")
        if not np.all(A[row, j + 1:] == y[row]):
            errors.append(f"row {cert.I_star[row]} changes after its flip")
    return errors


def flip_pattern_errors(M: np.ndarray, y: Sequence[int]) -> List[str]:
    """Square matrix with flipped diagonal, x above it and x in the last column."""
    y = np.asarray(y, dtype=np.int8)
    m = len(y)
    if M.shape != (m, m):
        return [f"matrix is {M.shape[0]}x{M.shape[1]}, expected {m}x{m}"]
    errors = []
    if m and not np.array_equal(M[:, -1], y):
        errors.append("last column differs from x")
    for a in range(m - 1):
        if M[a, a] != 1 - y[a]:
            errors.append(f"diagonal entry {a} is not flipped")
        if not np.all(M[a, a + 1:] == y[a]):
            errors.append(f"row {a} changes after its flip")
    return errors


class WitnessIdentityCheck(PropertyCheck):
    """witness(V, x, ()) returns x for every Pareto-optimal x."""

    def __init__(self):
        super().__init__("witness_identity", Severity.CRITICAL)

    def check(self, context: CheckContext) -> List[Violation]:
        found = []
        for x in context.pareto:
            trace = witness(context.instance, x, eps=context.eps)
            if trace.result != x:
                found.append(self.violation(f"witness returned {trace.result}", x))
        return found


class CertificateFormCheck(PropertyCheck):
    def __init__(self):
        super().__init__("certificate_form")

    def check(self, context: CheckContext) -> List[Violation]:
        found = []
        for x in context.pareto:
            cert = extract_certificate(context.instance, x, eps=context.eps)
            found.extend(self.violation(msg, x) for msg in certificate_pattern_errors(cert))
        return found


class ReconstructionCheck(PropertyCheck):
    """reconstruct(I*, A, B, u) returns x for u = u* and u = 0."""

    def __init__(self):
        super().__init__("reconstruction", Severity.CRITICAL)

    def check(self, context: CheckContext) -> List[Violation]:
        inst, eps = context.instance, context.eps
        found = []
        for x in context.pareto:
            cert = extract_certificate(inst, x, eps=eps)
            A = cert.restricted()
            for label, u in (('u*', shift_vector(cert.I_star, A, inst.n)), ('zero', Solution.zeros(inst.n))):
                back = witness_reconstruct(inst, cert.I_star, A, shifted_box(inst, x, u, eps), u)
                if back != x:
                    found.append(self.violation(f"reconstruction with u={label} returned {back}", x))
        return found


class RankCheck(PropertyCheck):
    """The block matrix Q' of every certificate has full rank."""

    def __init__(self):
        super().__init__("q_prime_rank")

    def check(self, context: CheckContext) -> List[Violation]:
        found = []
        for x in context.pareto:
            cert = extract_certificate(context.instance, x, eps=context.eps)
            A = cert.restricted()
            shift = build_qk(cert.I_star, A, shift_vector(cert.I_star, A, context.instance.n))
            if not rank_full(q_prime(shift)):
                found.append(self.violation("Q' is rank deficient", x))
        return found


class CountReplayCheck(PropertyCheck):
    """Indicator sum over realized (certificate, box) triples equals PO, and x -> triple is injective."""

    def __init__(self):
        super().__init__("count_replay")

    def check(self, context: CheckContext) -> List[Violation]:
        result = certificate_count_replay(context.instance, context.eps, engine=context.engine)
        if result.consistent:
            return []
        return [self.violation(
            f"PO={result.pareto_count}, indicator sum={result.indicator_sum}, "
            f"distinct triples={result.distinct_triples}", **result.to_dict())]


class MaskingCheck(PropertyCheck):
    """Reconstruction ignores V on I* beyond the revealed Q_k combinations."""

    def __init__(self, rounds: int = 2):
        super().__init__("masking", Severity.MEDIUM)
        self.rounds = rounds

    def check(self, context: CheckContext) -> List[Violation]:
        inst, eps = context.instance, context.eps
        rng = context.rng(salt=1)
        found = []
        for x in context.pareto:
            cert = extract_certificate(inst, x, eps=eps)
            A = cert.restricted()
            u = shift_vector(cert.I_star, A, inst.n)
            box = shifted_box(inst, x, u, eps)
            constraints = certificate_constraints(build_qk(cert.I_star, A, u))
            for _ in range(self.rounds):
                other = alternative_realization(inst, constraints, rng)
                back = witness_reconstruct(other, cert.I_star, A, box, u)
                if back != x:
                    found.append(self.violation(f"masked realization reconstructs {back}", x))
        return found


class MultiCertificateCheck(PropertyCheck):
    """Two solutions at a time: combined Q' full rank and each reconstructs from the shared rows."""

    def __init__(self):
        super().__init__("multi_certificate", Severity.MEDIUM)

    def applicable(self, context: CheckContext) -> bool:
        inst = context.instance
        return super().applicable(context) and 2 * (inst.d + 1) <= inst.n - (inst.d + 1)

    def check(self, context: CheckContext) -> List[Violation]:
        inst, eps = context.instance, context.eps
        pareto = context.pareto
        found = []
        for first, second in zip(pareto, pareto[1:]):
            multi = witness_multi(inst, [first, second])
            if not rank_full(multi.q_prime(inst.n)):
                found.append(self.violation("combined Q' is rank deficient", first, pair=str(second)))
            for x, A, u in zip((first, second), multi.matrices(), multi.shift_vectors(inst.n)):
                back = witness_reconstruct(inst, multi.I_star, A, shifted_box(inst, x, u, eps), u)
                if back != x:
                    found.append(self.violation(f"shared-row reconstruction returned {back}", x))
        return found


def _zp_certificate(context: CheckContext, x: Solution, check: PropertyCheck, found: List[Violation]):
    result, cert = witness_zp(context.instance, context.partition, x)
    if cert is None or result != frozenset({x}):
        found.append(check.violation(f"zero-preserving witness returned {sorted(map(str, result))}", x))
        return None
    return cert


class ZPIdentityCheck(PropertyCheck):
    """Zero-preserving witness returns {x} and its last vector is x."""

    requires_partition = True

    def __init__(self):
        super().__init__("zp_identity", Severity.CRITICAL)

    def check(self, context: CheckContext) -> List[Violation]:
        found: List[Violation] = []
        for x in context.pareto:
            cert = _zp_certificate(context, x, self, found)
            if cert is not None and cert.x != x:
                found.append(self.violation(f"last constructed vector is {cert.x}", x))
        return found


class ZPFormCheck(PropertyCheck):
    requires_partition = True

    def __init__(self):
        super().__init__("zp_certificate_form")

    def check(self, context: CheckContext) -> List[Violation]:
        found: List[Violation] = []
        for x in context.pareto:
            cert = _zp_certificate(context, x, self, found)
            if cert is None:
                continue
            for k, block in enumerate(context.blocks):
                M = flip_matrix(cert, context.partition, k)
                y = [x.bits[i] for i in cert.I_star if i in block]
                found.extend(self.violation(f"objective {k}: {msg}", x)
                             for msg in flip_pattern_errors(M, y))
        return found


class ZPReconstructionCheck(PropertyCheck):
    """Zero-preserving pipeline identity, per-objective independence and masking."""

    requires_partition = True

    def __init__(self):
        super().__init__("zp_reconstruction", Severity.CRITICAL)

    def _one(self, context: CheckContext, x: Solution, cert: ZPCertificate, rng) -> List[Violation]:
        inst, eps, partition = context.instance, context.eps, context.partition
        A = cert.restricted()
        u = zp_shift_vector(cert.I_star, A, cert.i_stars, inst.n)
        box = shifted_box(inst, x, u, eps)
        out = []
        back = witness_zp_reconstruct(inst, partition, cert.I_star, A, cert.bookkeeping, box, u)
        if back != frozenset({x}):
            out.append(self.violation(f"reconstruction returned {sorted(map(str, back))}", x))
        blocks = zp_matrices(cert, partition, u)
        for block in blocks:
            if not block.independent():
                out.append(self.violation(f"[P_k | Q_k | p] of objective {block.k} is dependent", x))
        other = alternative_realization(inst, zp_constraints(blocks), rng)
        masked = witness_zp_reconstruct(other, partition, cert.I_star, A, cert.bookkeeping, box, u)
        if masked != back:
            out.append(self.violation("masked realization changes the reconstruction", x))
        return out

    def check(self, context: CheckContext) -> List[Violation]:
        found: List[Violation] = []
        rng = context.rng(salt=2)
        for x in context.pareto:
            cert = _zp_certificate(context, x, self, found)
            if cert is not None:
                found.extend(self._one(context, x, cert, rng))
        return found


def default_checks(zero_preserving: bool = False) -> List[PropertyCheck]:
    """
    The checks `witness-check` runs.

    Plain instances get the certificate suite; zero-preserving instances
    (a partition was given) get the zero-preserving suite instead, since
    their OK event is the weaker block-restricted one.
    """
    if zero_preserving:
        return [ZPIdentityCheck(), ZPFormCheck(), ZPReconstructionCheck()]
    return [WitnessIdentityCheck(), CertificateFormCheck(), ReconstructionCheck(), RankCheck(),
            CountReplayCheck(), MaskingCheck(), MultiCertificateCheck()]

