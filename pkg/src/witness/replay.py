"""
Replay of the certificate counting argument on one realization.

Every Pareto-optimal x maps to a triple (I*, A, B) with B the box of
V(x - u*(I*, A)). The indicator of a triple is one when reconstruction
from it returns a solution whose shifted box is B. Summed over the
realized triples it must equal the number of Pareto-optimal solutions,
and the map x -> triple must be injective.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Sequence

from ..model.events import working_epsilon, working_epsilon_zp
from ..model.instance import Instance
from ..model.solution import Solution
from ..pareto.counting import pareto_set
from .reconstruct import shifted_box, witness_reconstruct
from .shift import shift_vector
from .witness import extract_certificate
from .zero_preserving import witness_zp, witness_zp_reconstruct, zp_shift_vector

logger = logging.getLogger(__name__)


@dataclass
class ReplayResult:
    """Outcome of one replay; failures lists the solutions whose triple did not check out."""
    pareto_count: int
    indicator_sum: int
    distinct_triples: int
    eps: float
    failures: List[Solution] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return self.distinct_triples == self.pareto_count

    @property
    def consistent(self) -> bool:
        return self.injective and self.indicator_sum == self.pareto_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pareto_count': self.pareto_count,
            'indicator_sum': self.indicator_sum,
            'distinct_triples': self.distinct_triples,
            'eps': self.eps,
            'injective': self.injective,
            'consistent': self.consistent,
            'failures': [str(x) for x in self.failures],
        }


def _triple_key(I_star: Sequence[int], A, box) -> Hashable:
    return tuple(I_star), tuple(map(tuple, A.tolist())), tuple(float(b) for b in box)


def certificate_count_replay(instance: Instance, eps: Optional[float] = None,
                             engine: str = 'auto') -> ReplayResult:
    """
    Check sum-of-indicators == PO(V) and injectivity for plain certificates.

    eps defaults to the working epsilon of the instance, so the OK event
    holds by construction.
    """
    eps = working_epsilon(instance) if eps is None else eps
    front = pareto_set(instance, engine=engine)
    triples: Dict[Hashable, int] = {}
    failures = []
    for x in front.solutions():
        cert = extract_certificate(instance, x, eps=eps)
        A = cert.restricted()
        u = shift_vector(cert.I_star, A, instance.n)
        box = shifted_box(instance, x, u, eps)
        key = _triple_key(cert.I_star, A, box)
        if key in triples:
            continue
        back = witness_reconstruct(instance, cert.I_star, A, box, u)
        hit = back is not None and tuple(shifted_box(instance, back, u, eps)) == tuple(box)
        triples[key] = int(hit)
        if back != x:
            failures.append(x)
    result = ReplayResult(len(front), sum(triples.values()), len(triples), eps, failures)
    logger.debug("replay: PO=%d indicators=%d triples=%d", result.pareto_count,
                 result.indicator_sum, result.distinct_triples)
    return result


def zp_certificate_count_replay(instance: Instance, partition: Sequence[Sequence[int]],
                                eps: Optional[float] = None, engine: str = 'auto') -> ReplayResult:
    """Same replay with zero-preserving certificates and the OKZ working epsilon."""
    eps = working_epsilon_zp(instance, partition) if eps is None else eps
    front = pareto_set(instance, engine=engine)
    triples: Dict[Hashable, int] = {}
    failures = []
    for x in front.solutions():
        result, cert = witness_zp(instance, partition, x)
        if cert is None or result != frozenset({x}):
            failures.append(x)
            continue
        A = cert.restricted()
        u = zp_shift_vector(cert.I_star, A, cert.i_stars, instance.n)
        box = shifted_box(instance, x, u, eps)
        key = _triple_key(cert.I_star, A, box) + (cert.bookkeeping,)
        if key in triples:
            continue
        back = witness_zp_reconstruct(instance, partition, cert.I_star, A, cert.bookkeeping, box, u)
        hit = len(back) == 1 and tuple(shifted_box(instance, next(iter(back)), u, eps)) == tuple(box)
        triples[key] = int(hit)
        if back != frozenset({x}):
            failures.append(x)
    return ReplayResult(len(front), sum(triples.values()), len(triples), eps, failures)
