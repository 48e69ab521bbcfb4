"""
Property checks for single instances, used by `witness-check`.
"""

from .detector import CheckContext, CheckManager, PropertyCheck, Severity, Violation
from .properties import (
    CertificateFormCheck, CountReplayCheck, MaskingCheck, MultiCertificateCheck, RankCheck,
    ReconstructionCheck, WitnessIdentityCheck, ZPFormCheck, ZPIdentityCheck, ZPReconstructionCheck,
    certificate_pattern_errors, default_checks, flip_pattern_errors,
)

__all__ = [
    'CheckContext', 'CheckManager', 'PropertyCheck', 'Severity', 'Violation',
    'CertificateFormCheck', 'CountReplayCheck', 'MaskingCheck', 'MultiCertificateCheck', 'RankCheck',
    'ReconstructionCheck', 'WitnessIdentityCheck', 'ZPFormCheck', 'ZPIdentityCheck', 'ZPReconstructionCheck',
    'certificate_pattern_errors', 'default_checks', 'flip_pattern_errors',
]
