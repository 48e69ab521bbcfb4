"""
CSV and JSON writers for experiment reports.

The CSV columns of every report kind are frozen and versioned by
SCHEMA_VERSION. CSV output holds only data derived from the seed, so a
re-run with the same configuration reproduces it byte for byte; run
metadata (wall time included) goes to JSON only.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from ..errors import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

COLUMNS: Dict[str, List[str]] = {
    'sweep': [
        'n', 'phi', 'c', 'trials', 'mean', 'variance', 'mean_ci_low', 'mean_ci_high',
        'moment_c', 'moment_ci_low', 'moment_ci_high', 'resamples',
        'bound_log2', 'moment_bound_log2', 'jensen_ok', 'skipped', 'reason',
    ],
    'tail': [
        'n', 'phi', 'threshold', 'threshold_log2', 'multiple_log2',
        'empirical', 'bound', 'trials', 'within_bound',
    ],
    'path-trade': [
        'edges', 'phi', 'd', 'valid_paths', 'classes', 'trials', 'mean', 'variance',
        'ci_low', 'ci_high', 'min_po', 'max_po',
    ],
    'prob-check': [
        'estimate', 'hits', 'trials', 'ci_low', 'ci_high', 'bound', 'quasiconcave',
    ],
}
COLUMNS['moments'] = COLUMNS['sweep']

FIT_COLUMNS = ['parameter', 'fixed', 'slope', 'stderr', 'intercept', 'points',
               'upper_bound_exponent', 'defined']


def _clean(value: Any) -> Any:
    """JSON-safe copy: non-finite floats become None."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def report_frame(kind: str, rows: List[Dict[str, Any]]) -> pd.DataFrame:
    if kind not in COLUMNS:
        raise ConfigError(f"no CSV schema for report kind {kind!r}")
    frame = pd.DataFrame(rows, columns=COLUMNS[kind])
    frame.insert(0, 'schema_version', SCHEMA_VERSION)
    return frame


def to_csv(report) -> str:
    return report_frame(report.kind, report.rows()).to_csv(index=False, float_format='%.17g')


def fits_to_csv(report) -> str:
    frame = pd.DataFrame([f.to_dict() for f in report.fits], columns=FIT_COLUMNS)
    return frame.to_csv(index=False, float_format='%.17g')


def to_json(report) -> str:
    data = {'schema_version': SCHEMA_VERSION}
    data.update(report.to_dict())
    return json.dumps(_clean(data), indent=2)


def write_report(report, path: Optional[str] = None, fmt: str = 'csv') -> str:
    """
    Serialize a report and optionally write it.

    Args:
        report: Any report with kind, rows() and to_dict()
        path: Output file; parent directories are created
        fmt: 'csv' or 'json'

    Returns:
        The serialized text
    """
    if fmt == 'csv':
        text = to_csv(report)
    elif fmt == 'json':
        text = to_json(report)
    else:
        raise ConfigError(f"unknown format {fmt!r}; expected csv or json")
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding='utf-8')
        logger.info("wrote %s report to %s", report.kind, target)
    return text
