"""
Statistical reporting for moment experiments.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from ..bounds.formulas import bound_smoothed_po

NAN = float('nan')


@dataclass
class CellSummary:
    """Statistical summary for a single (n, phi) cell."""
    n: int
    phi: float
    c: int
    trials: int = 0
    mean: float = NAN
    variance: float = NAN
    mean_ci_low: float = NAN
    mean_ci_high: float = NAN
    moment_c: float = NAN
    moment_ci_low: float = NAN
    moment_ci_high: float = NAN
    resamples: int = 0
    bound_log2: float = NAN
    moment_bound_log2: float = NAN
    skipped: bool = False
    reason: str = ""

    @classmethod
    def from_estimate(cls, estimate, c: int, d: int, first_variant: str,
                      moment_variant: str) -> 'CellSummary':
        """Summary of a MomentEstimate with the matching bound evaluations."""
        mean_low, mean_high = estimate.moment_ci(1)
        low, high = estimate.moment_ci(c)
        return cls(
            n=estimate.n, phi=estimate.phi, c=c, trials=estimate.trials,
            mean=estimate.mean, variance=estimate.variance,
            mean_ci_low=mean_low, mean_ci_high=mean_high,
            moment_c=estimate.moment(c), moment_ci_low=low, moment_ci_high=high,
            resamples=estimate.resamples,
            bound_log2=bound_smoothed_po(estimate.n, d, estimate.phi, first_variant).log2,
            moment_bound_log2=bound_smoothed_po(estimate.n, d, estimate.phi, moment_variant, c=c).log2,
        )

    @classmethod
    def skipped_cell(cls, n: int, phi: float, c: int, reason: str) -> 'CellSummary':
        return cls(n=n, phi=phi, c=c, skipped=True, reason=reason)

    @property
    def mean_halfwidth(self) -> float:
        return (self.mean_ci_high - self.mean_ci_low) / 2.0

    @property
    def moment_halfwidth(self) -> float:
        return (self.moment_ci_high - self.moment_ci_low) / 2.0

    @property
    def jensen_ok(self) -> bool:
        """E[PO^c] >= E[PO]^c up to the propagated CI slack; skipped cells pass."""
        if self.skipped:
            return True
        slack = self.moment_halfwidth + self.c * self.mean ** (self.c - 1) * self.mean_halfwidth
        return self.moment_c >= self.mean ** self.c - slack - 1e-9 * max(1.0, self.moment_c)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n, 'phi': self.phi, 'c': self.c, 'trials': self.trials,
            'mean': self.mean, 'variance': self.variance,
            'mean_ci_low': self.mean_ci_low, 'mean_ci_high': self.mean_ci_high,
            'moment_c': self.moment_c,
            'moment_ci_low': self.moment_ci_low, 'moment_ci_high': self.moment_ci_high,
            'resamples': self.resamples,
            'bound_log2': self.bound_log2, 'moment_bound_log2': self.moment_bound_log2,
            'jensen_ok': self.jensen_ok, 'skipped': self.skipped, 'reason': self.reason,
        }


@dataclass
class ExponentFit:
    """
    Least-squares slope of log E[PO] against log n (phi fixed) or log phi (n fixed).

    upper_bound_exponent is the exponent of the worst-case bound (2d for n,
    d for phi); random instances need not reach it.
    """
    parameter: str
    fixed: float
    slope: float = NAN
    stderr: float = NAN
    intercept: float = NAN
    points: int = 0
    upper_bound_exponent: int = 0

    @property
    def defined(self) -> bool:
        return not math.isnan(self.slope)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'parameter': self.parameter, 'fixed': self.fixed,
            'slope': self.slope, 'stderr': self.stderr, 'intercept': self.intercept,
            'points': self.points, 'upper_bound_exponent': self.upper_bound_exponent,
            'defined': self.defined,
        }


def fit_exponent(xs: Sequence[float], means: Sequence[float]) -> Dict[str, float]:
    """
    Slope of log(mean) vs log(x) with its standard error.

    Undefined (NaN) with fewer than two distinct positive points; the
    standard error is NaN with exactly two.
    """
    pairs = [(x, y) for x, y in zip(xs, means) if x > 0 and y > 0 and not math.isnan(y)]
    if len({x for x, _ in pairs}) < 2:
        return {'slope': NAN, 'stderr': NAN, 'intercept': NAN, 'points': len(pairs)}
    lx = np.log([x for x, _ in pairs])
    ly = np.log([y for _, y in pairs])
    result = linregress(lx, ly)
    stderr = float(result.stderr) if len(pairs) > 2 else NAN
    return {'slope': float(result.slope), 'stderr': stderr,
            'intercept': float(result.intercept), 'points': len(pairs)}


def fit_exponents(cells: Sequence[CellSummary], d: int) -> List[ExponentFit]:
    """One n-fit per phi value and one phi-fit per n value, over the cells that ran."""
    ran = [c for c in cells if not c.skipped]
    fits: List[ExponentFit] = []
    for phi in sorted({c.phi for c in cells}):
        row = sorted((c for c in ran if c.phi == phi), key=lambda c: c.n)
        fit = fit_exponent([c.n for c in row], [c.mean for c in row])
        fits.append(ExponentFit('n', phi, upper_bound_exponent=2 * d, **fit))
    for n in sorted({c.n for c in cells}):
        row = sorted((c for c in ran if c.n == n), key=lambda c: c.phi)
        fit = fit_exponent([c.phi for c in row], [c.mean for c in row])
        fits.append(ExponentFit('phi', float(n), upper_bound_exponent=d, **fit))
    return fits


def halfwidth_ratio(first: CellSummary, second: CellSummary) -> float:
    """CI half-width of the second cell relative to the first; 1/sqrt(trial ratio) is expected."""
    if first.mean_halfwidth == 0:
        return NAN
    return second.mean_halfwidth / first.mean_halfwidth


def run_metadata(config: Dict[str, Any], started: float) -> Dict[str, Any]:
    from .. import __version__

    return {
        'seed': config.get('seed'),
        'version': __version__,
        'wall_time': time.time() - started,
        'config': config,
    }


@dataclass
class ExperimentReport:
    """Cells, exponent fits and run metadata of one experiment."""
    kind: str
    cells: List[CellSummary] = field(default_factory=list)
    fits: List[ExponentFit] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def jensen_consistent(self) -> bool:
        return all(c.jensen_ok for c in self.cells)

    @property
    def skipped(self) -> List[CellSummary]:
        return [c for c in self.cells if c.skipped]

    def phi_drops(self) -> List[Tuple[int, float, float]]:
        """
        (n, phi, next phi) wherever the mean falls by more than the two CI half-widths.

        Smoke check only; the smoothed bounds grow with phi but random
        instances are not obliged to follow them.
        """
        drops = []
        for n in sorted({c.n for c in self.cells}):
            row = sorted((c for c in self.cells if c.n == n and not c.skipped), key=lambda c: c.phi)
            for a, b in zip(row, row[1:]):
                if b.mean < a.mean - (a.mean_halfwidth + b.mean_halfwidth):
                    drops.append((n, a.phi, b.phi))
        return drops

    def cell(self, n: int, phi: float) -> Optional[CellSummary]:
        for c in self.cells:
            if c.n == n and c.phi == phi:
                return c
        return None

    def rows(self) -> List[Dict[str, Any]]:
        return [c.to_dict() for c in self.cells]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'cells': self.rows(),
            'fits': [f.to_dict() for f in self.fits],
            'jensen_consistent': self.jensen_consistent,
            'phi_drops': [list(drop) for drop in self.phi_drops()],
            'metadata': self.metadata,
        }

    def format_report(self) -> str:
        """Console summary: cell table, then exponent fits."""
        lines = ["", "=" * 60, f"{self.kind.upper()} REPORT", "=" * 60]
        if 'seed' in self.metadata:
            lines.append(f"Seed: {self.metadata['seed']}")
        lines.append(f"Cells: {len(self.cells)} ({len(self.skipped)} skipped)")
        lines.append(f"Jensen consistent: {'yes' if self.jensen_consistent else 'NO'}")
        drops = self.phi_drops()
        lines.append("Mean nondecreasing in phi (smoke check): "
                     + ("yes" if not drops else ", ".join(f"n={n} drops from phi={a:g} to {b:g}" for n, a, b in drops)))
        lines.append("")
        lines.append("-" * 80)
        lines.append(f"{'n':<6} {'phi':<8} {'Trials':<8} {'E[PO]':<12} {'+/-':<10} "
                     f"{'E[PO^c]':<14} {'log2 bound':<12}")
        lines.append("-" * 80)
        for c in self.cells:
            if c.skipped:
                lines.append(f"{c.n:<6} {c.phi:<8g} skipped: {c.reason}")
                continue
            lines.append(f"{c.n:<6} {c.phi:<8g} {c.trials:<8} {c.mean:<12.4f} "
                         f"{c.mean_halfwidth:<10.4f} {c.moment_c:<14.4f} {c.bound_log2:<12.2f}")
        lines.append("-" * 80)
        if self.fits:
            lines.append("")
            lines.append("Fitted exponents (bound exponents are upper-bound exponents):")
            for f in self.fits:
                label = f"log E[PO] vs log {f.parameter}"
                fixed = f"{'phi' if f.parameter == 'n' else 'n'}={f.fixed:g}"
                if f.defined:
                    err = f" +/- {f.stderr:.3f}" if not math.isnan(f.stderr) else ""
                    lines.append(f"  {label:<24} {fixed:<10} slope {f.slope:.3f}{err} "
                                 f"(upper-bound exponent {f.upper_bound_exponent})")
                else:
                    lines.append(f"  {label:<24} {fixed:<10} undefined ({f.points} point(s))")
        return "\n".join(lines)
