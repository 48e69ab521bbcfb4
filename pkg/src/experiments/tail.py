"""
Empirical concentration tails Pr[PO >= theta] against the concentration bound.

Relative thresholds are multiples k of s_1, the first-moment bound of the
c-th moment family; absolute thresholds are PO values. s_1 is astronomically
large at any size this runs at, so relative tails are a smoke test: the
empirical tail is 0 and the bound is at most 1.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..bounds.formulas import log2_concentration_bound, log2_moment_bound
from ..errors import ConfigError, EnumerationCapError
from ..reporting.stats import run_metadata
from .config import ExperimentConfig
from .moments import sample_counts
from .sweep import QUASICONCAVE_DENSITIES, grid_cells

logger = logging.getLogger(__name__)

SMOKE_NOTE = ("s_1 is far beyond any observable PO at these sizes; "
              "relative-threshold rows are a smoke test, not a sharp comparison")


@dataclass
class TailRow:
    n: int
    phi: float
    threshold: float
    threshold_log2: float
    multiple_log2: float
    empirical: float
    bound: float
    trials: int

    @property
    def within_bound(self) -> bool:
        return self.empirical <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n, 'phi': self.phi, 'threshold': self.threshold,
            'threshold_log2': self.threshold_log2, 'multiple_log2': self.multiple_log2,
            'empirical': self.empirical, 'bound': self.bound, 'trials': self.trials,
            'within_bound': self.within_bound,
        }


@dataclass
class TailReport:
    entries: List[TailRow] = field(default_factory=list)
    skipped: List[Dict[str, Any]] = field(default_factory=list)
    absolute: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)
    kind: str = 'tail'

    @property
    def within_bound(self) -> bool:
        return all(row.within_bound for row in self.entries)

    def monotone(self) -> bool:
        """Empirical tail is nonincreasing in the threshold within every cell."""
        cells: Dict[tuple, List[TailRow]] = {}
        for row in self.entries:
            cells.setdefault((row.n, row.phi), []).append(row)
        for rows in cells.values():
            ordered = sorted(rows, key=lambda r: r.threshold_log2)
            if any(b.empirical > a.empirical for a, b in zip(ordered, ordered[1:])):
                return False
        return True

    def rows(self) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in self.entries]

    def notes(self) -> List[str]:
        return [] if self.absolute else [SMOKE_NOTE]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'rows': self.rows(),
            'skipped': self.skipped,
            'within_bound': self.within_bound,
            'notes': self.notes(),
            'metadata': self.metadata,
        }

    def format_report(self) -> str:
        lines = ["", "=" * 60, "CONCENTRATION TAIL REPORT", "=" * 60]
        lines.extend(f"Note: {note}" for note in self.notes())
        lines.append("-" * 70)
        lines.append(f"{'n':<6} {'phi':<8} {'theta':<16} {'Pr[PO>=theta]':<16} {'bound':<12}")
        lines.append("-" * 70)
        for r in self.entries:
            theta = f"{r.threshold:g}" if math.isfinite(r.threshold) else f"2^{r.threshold_log2:.1f}"
            lines.append(f"{r.n:<6} {r.phi:<8g} {theta:<16} {r.empirical:<16.4f} {r.bound:<12.4g}")
        for s in self.skipped:
            lines.append(f"{s['n']:<6} {s['phi']:<8g} skipped: {s['reason']}")
        lines.append("-" * 70)
        return "\n".join(lines)


def _tail_row(counts: np.ndarray, n: int, phi: float, theta_log2: float,
              s1_log2: float, d: int) -> TailRow:
    multiple_log2 = theta_log2 - s1_log2
    bound = 1.0 if multiple_log2 < 0 else 2.0 ** log2_concentration_bound(multiple_log2, d)
    threshold = 2.0 ** theta_log2 if theta_log2 < 1023 else math.inf
    if counts.size == 0:
        empirical = 0.0
    else:
        # compare in log space so thresholds beyond float range stay exact
        logs = np.log2(np.maximum(counts, 1).astype(np.float64))
        logs[counts == 0] = -math.inf
        empirical = float(np.count_nonzero(logs >= theta_log2)) / counts.size
    return TailRow(n, phi, threshold, theta_log2, multiple_log2, empirical, bound, int(counts.size))


def concentration_tail(cfg: ExperimentConfig,
                       thresholds: Optional[Sequence[float]] = None) -> TailReport:
    """
    Empirical Pr[PO >= theta] per grid cell and threshold, next to the bound.

    Args:
        cfg: Experiment configuration; cfg.absolute_thresholds selects the
            threshold interpretation
        thresholds: Overrides cfg.thresholds

    Returns:
        TailReport with one row per (cell, threshold)
    """
    started = time.time()
    thresholds = list(cfg.thresholds if thresholds is None else thresholds)
    if not thresholds:
        raise ConfigError("need at least one threshold")
    if any(t <= 0 for t in thresholds) or (not cfg.absolute_thresholds and any(t < 1 for t in thresholds)):
        raise ConfigError(f"thresholds must be positive (multiples of s_1 at least 1), got {thresholds}")
    quasiconcave = cfg.density in QUASICONCAVE_DENSITIES
    report = TailReport(absolute=cfg.absolute_thresholds)
    for cell, n, phi in grid_cells(cfg):
        try:
            counts = sample_counts(cfg, n, phi, cell).counts
        except EnumerationCapError as exc:
            logger.info("tail cell n=%d phi=%g skipped: %s", n, phi, exc)
            report.skipped.append({'n': n, 'phi': phi, 'reason': str(exc)})
            continue
        s1_log2 = log2_moment_bound(n, cfg.d, phi, 1, quasiconcave)
        for t in thresholds:
            theta_log2 = math.log2(t) if cfg.absolute_thresholds else s1_log2 + math.log2(t)
            report.entries.append(_tail_row(counts, n, phi, theta_log2, s1_log2, cfg.d))
    report.metadata = run_metadata(cfg.to_dict(), started)
    return report
