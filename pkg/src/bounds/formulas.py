"""
Closed-form bound evaluators.

The smoothed bounds carry constants such as 4^{c^2 (d+1)^2} that overflow
a float long before n gets interesting, so everything is computed as a
base-2 logarithm and wrapped in LogValue. LogValue.value is +inf once the
bound no longer fits a double; the overflowed flag says so.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict

from ..errors import ModelError

# 2**1024 overflows a double
_MAX_LOG2 = 1023.0

BOUND_VARIANTS = (
    'first-moment-qc', 'first-moment-general',
    'moment-c-qc', 'moment-c-general',
    'zp-qc', 'zp-general',
)


@dataclass(frozen=True, order=True)
class LogValue:
    """A positive number stored as log2; log2 = -inf encodes zero."""
    log2: float

    @classmethod
    def of(cls, value: float) -> 'LogValue':
        if value < 0:
            raise ModelError(f"bounds are nonnegative, got {value}")
        return cls(math.log2(value) if value > 0 else -math.inf)

    @property
    def overflowed(self) -> bool:
        return self.log2 >= _MAX_LOG2

    @property
    def value(self) -> float:
        if self.overflowed:
            return math.inf
        return 2.0 ** self.log2 if self.log2 != -math.inf else 0.0

    def __mul__(self, other: 'LogValue') -> 'LogValue':
        return LogValue(self.log2 + other.log2)

    def __truediv__(self, other: 'LogValue') -> 'LogValue':
        return LogValue(self.log2 - other.log2)

    def to_dict(self) -> Dict[str, Any]:
        return {'log2': self.log2, 'value': self.value, 'overflow': self.overflowed}


def _lg(value: float) -> float:
    return math.log2(value)


def _check_positive(**values) -> None:
    for name, value in values.items():
        if not value > 0:
            raise ModelError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class BoundParams:
    """Parameters shared by the bound formulas."""
    n: int
    d: int = 1
    phi: float = 1.0
    c: int = 1
    k: int = 1
    eps: float = 0.0
    quasiconcave: bool = True

    def __post_init__(self):
        _check_positive(n=self.n, d=self.d, phi=self.phi, c=self.c, k=self.k)

    def gamma(self, variant: str) -> int:
        """Number of revealed coefficients the certificate probability ranges over."""
        if variant.startswith('first-moment'):
            return self.d * (self.d + 1)
        if variant.startswith('moment-c'):
            return self.c * self.d * (self.d + 1)
        if variant.startswith('zp'):
            return self.d ** 3 + self.d ** 2 + self.d
        raise ModelError(f"unknown bound variant: {variant!r}")

    @property
    def beta(self) -> int:
        return self.d if self.quasiconcave else self.d * (self.d + 1)


def log2_box_probability(n: int, k: int, phi: float, eps: float, quasiconcave: bool) -> float:
    _check_positive(n=n, k=k, phi=phi, eps=eps)
    if k > n:
        raise ModelError(f"k = {k} exceeds n = {n}")
    if quasiconcave:
        return k + (n - k) * _lg(n) + k * _lg(phi) + k * _lg(eps)
    return (n - k) * _lg(2 * n) + n * _lg(phi) + k * _lg(eps)


def box_probability_bound(n: int, k: int, phi: float, eps: float, quasiconcave: bool) -> float:
    """
    Bound on Pr[(Z_1..Z_k) in C(Y)] for k of the m full-rank combinations of n variables.

    General densities give (2n)^{n-k} phi^n eps^k; quasiconcave densities
    give 2^k n^{n-k} phi^k eps^k.
    """
    return LogValue(log2_box_probability(n, k, phi, eps, quasiconcave)).value


def log2_certificate_probability(gamma: int, dims: int, phi: float, eps: float, quasiconcave: bool) -> float:
    """Bound on the probability that one certificate lands in one box (dims = number of located combinations)."""
    _check_positive(gamma=gamma, dims=dims, phi=phi, eps=eps)
    if quasiconcave:
        return dims + (gamma - dims) * _lg(gamma) + dims * _lg(phi) + dims * _lg(eps)
    return (gamma - dims) * _lg(2 * gamma) + gamma * _lg(phi) + dims * _lg(eps)


def certificate_probability_bound(gamma: int, dims: int, phi: float, eps: float,
                                  quasiconcave: bool = True) -> LogValue:
    return LogValue(log2_certificate_probability(gamma, dims, phi, eps, quasiconcave))


def certificate_space_bound(n: int, d: int, c: int = 1, zero_preserving: bool = False) -> LogValue:
    """
    Size of the certificate space.

    Plain (c = 1) and c-fold certificates: 2^{c^2 (d+1)^2} n^{cd}.
    Zero-preserving certificates: 2^{(d+1)^5} d^{2d+3} n^{d^2 (d+1)}.
    """
    _check_positive(n=n, d=d, c=c)
    if zero_preserving:
        return LogValue((d + 1) ** 5 + (2 * d + 3) * _lg(d) + d * d * (d + 1) * _lg(n))
    return LogValue(c * c * (d + 1) ** 2 + c * d * _lg(n))


def ok_failure_bound(n: int, d: int, phi: float, eps: float) -> LogValue:
    """Union bound 2^{2n+1} d phi eps on the probability that some relevant gap is at most eps."""
    _check_positive(n=n, d=d, phi=phi, eps=eps)
    return LogValue(2 * n + 1 + _lg(d) + _lg(phi) + _lg(eps))


def log2_moment_bound(n: int, d: int, phi: float, c: int, quasiconcave: bool) -> float:
    """log2 of s_c = 4^{c^2 (d+1)^2} (cd(d+1))^{cd^2} n^{2cd} phi^{c beta}."""
    beta = d if quasiconcave else d * (d + 1)
    return (2 * c * c * (d + 1) ** 2 + c * d * d * _lg(c * d * (d + 1))
            + 2 * c * d * _lg(n) + c * beta * _lg(phi))


def log2_smoothed_po(params: BoundParams, variant: str) -> float:
    n, d, phi, c = params.n, params.d, params.phi, params.c
    gamma = params.gamma(variant)
    if variant == 'first-moment-qc':
        return (d + 2) ** 2 + 2 * d * d * _lg(d + 1) + 2 * d * _lg(n) + d * _lg(phi)
    if variant == 'first-moment-general':
        s = certificate_probability_bound(gamma, d, phi, 1.0, quasiconcave=False).log2
        return (d + 1) ** 2 + d + 2 * d * _lg(n) + s
    if variant in ('moment-c-qc', 'moment-c-general'):
        return log2_moment_bound(n, d, phi, c, variant == 'moment-c-qc')
    if variant in ('zp-qc', 'zp-general'):
        # unit-width boxes; the eps^d factor cancels against the number of boxes
        s = certificate_probability_bound(gamma, d, phi, 1.0, quasiconcave=variant == 'zp-qc').log2
        return (d + 1) ** 5 + d + (2 * d + 3) * _lg(d) + gamma * _lg(n) + s
    raise ModelError(f"unknown bound variant {variant!r}; expected one of {', '.join(BOUND_VARIANTS)}")


def bound_smoothed_po(n: int, d: int, phi: float, variant: str, c: int = 1) -> LogValue:
    """
    Explicit bound on E[PO^c] (E[PO] for the first-moment and zp variants).

    Args:
        n: Number of variables
        d: Number of perturbed objectives
        phi: Density bound
        variant: One of BOUND_VARIANTS
        c: Moment order for the moment-c variants

    Returns:
        The bound in log2 space; .value is +inf when it does not fit a float
    """
    params = BoundParams(n=n, d=d, phi=phi, c=c, quasiconcave=variant.endswith('-qc'))
    return LogValue(log2_smoothed_po(params, variant))


def log2_concentration_bound(log2_k: float, d: int) -> float:
    """log2 of concentration_bound for k = 2**log2_k; k may be far beyond float range."""
    if log2_k < 0:
        raise ModelError(f"k must be at least 1, got 2**{log2_k}")
    exponent = math.floor((log2_k / 3.0) / (2 * (d + 1) ** 2))
    return -0.5 * exponent * log2_k


def concentration_bound(k: float, d: int) -> float:
    """
    Bound on Pr[PO >= k s_1]: (1/k)^{floor(log_8 k / (2 (d+1)^2)) / 2}.

    Equals 1 until log_8 k reaches 2 (d+1)^2.
    """
    if k < 1:
        raise ModelError(f"k must be at least 1, got {k}")
    return 2.0 ** log2_concentration_bound(math.log2(k), d)
