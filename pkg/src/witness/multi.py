"""
Certificates for c Pareto-optimal solutions at once.

Call l runs the witness with the indices revealed by calls 1..l-1
forbidden, so the final tuple I*_c has c(d+1) distinct entries and every
certificate is read on the same rows.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import WitnessPreconditionError
from ..model.instance import Instance
from ..model.solution import IndexTuple, Solution
from .shift import ShiftData, assemble_q_prime, build_qk, shift_vector
from .witness import Certificate, extract_certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiCertificate:
    """The c certificates and the combined tuple I*_c."""
    I_star: IndexTuple
    certificates: Tuple[Certificate, ...]

    @property
    def c(self) -> int:
        return len(self.certificates)

    def matrices(self) -> List[np.ndarray]:
        """A_l = A*_l restricted to I*_c."""
        return [cert.restrict_to(self.I_star) for cert in self.certificates]

    def i_stars(self) -> IndexTuple:
        return tuple(cert.i_star for cert in self.certificates)

    def shift_vectors(self, n: int) -> List[Solution]:
        return [shift_vector(self.I_star, A, n, i_star=cert.i_star)
                for A, cert in zip(self.matrices(), self.certificates)]

    def shift_data(self, n: int) -> List[ShiftData]:
        return [build_qk(self.I_star, A, u) for A, u in zip(self.matrices(), self.shift_vectors(n))]

    def q_prime(self, n: int) -> np.ndarray:
        """
        Block diagonal over k of [Q^(1)_k, p^(1,0), ..., Q^(c)_k, p^(c,0)].

        Each block is square with c(d+1) rows and columns.
        """
        data = self.shift_data(n)
        d = data[0].d
        blocks = []
        for k in range(1, d + 1):
            columns = []
            for shift in data:
                columns.append(shift.q(k))
                columns.append(shift.p(0)[:, None])
            blocks.append(np.column_stack(columns))
        return assemble_q_prime(blocks)


def witness_multi(instance: Instance, xs: Sequence[Solution]) -> MultiCertificate:
    """
    Sequential certificates for the solutions xs.

    Raises WitnessPreconditionError unless c(d+1) <= n - (d+1).
    """
    c = len(xs)
    d, n = instance.d, instance.n
    if c < 1:
        raise WitnessPreconditionError("need at least one solution")
    if c * (d + 1) > n - (d + 1):
        raise WitnessPreconditionError(f"c(d+1) = {c * (d + 1)} exceeds n - (d+1) = {n - d - 1}")
    I: IndexTuple = ()
    certificates = []
    for x in xs:
        cert = extract_certificate(instance, x, I)
        certificates.append(cert)
        I = cert.I_star
    logger.debug("multi-certificate for %d solutions reveals %d indices", c, len(I))
    return MultiCertificate(I, tuple(certificates))
