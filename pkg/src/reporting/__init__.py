"""
Reporting: moment statistics, exponent fits, report export and violation summaries.
"""

from .stats import CellSummary, ExperimentReport, ExponentFit, fit_exponent, fit_exponents, halfwidth_ratio, run_metadata
from .export import COLUMNS, FIT_COLUMNS, SCHEMA_VERSION, fits_to_csv, report_frame, to_csv, to_json, write_report
from .violations import ViolationSummary

__all__ = [
    'CellSummary', 'ExperimentReport', 'ExponentFit', 'fit_exponent', 'fit_exponents',
    'halfwidth_ratio', 'run_metadata',
    'COLUMNS', 'FIT_COLUMNS', 'SCHEMA_VERSION', 'fits_to_csv', 'report_frame', 'to_csv',
    'to_json', 'write_report',
    'ViolationSummary',
]
