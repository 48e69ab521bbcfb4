"""
Witness procedures, certificates, reconstruction and the revealed-combination matrices.
"""

from .linalg import columns_independent, integer_rank, rank_full, rational_null_space
from .witness import Certificate, WitnessRound, WitnessTrace, extract_certificate, witness
from .shift import ShiftData, assemble_q_prime, build_qk, q_matrix, q_prime, shift_vector
from .reconstruct import shifted_box, witness_reconstruct
from .multi import MultiCertificate, witness_multi
from .zero_preserving import (
    ZPBlock, ZPBookkeeping, ZPCertificate, ZPRound, flip_matrix, witness_zp,
    witness_zp_reconstruct, zp_matrices, zp_shift_vector,
)
from .masking import alternative_realization, certificate_constraints, zp_constraints
from .replay import ReplayResult, certificate_count_replay, zp_certificate_count_replay

__all__ = [
    'columns_independent', 'integer_rank', 'rank_full', 'rational_null_space',
    'Certificate', 'WitnessRound', 'WitnessTrace', 'extract_certificate', 'witness',
    'ShiftData', 'assemble_q_prime', 'build_qk', 'q_matrix', 'q_prime', 'shift_vector',
    'shifted_box', 'witness_reconstruct',
    'MultiCertificate', 'witness_multi',
    'ZPBlock', 'ZPBookkeeping', 'ZPCertificate', 'ZPRound', 'flip_matrix', 'witness_zp',
    'witness_zp_reconstruct', 'zp_matrices', 'zp_shift_vector',
    'alternative_realization', 'certificate_constraints', 'zp_constraints',
    'ReplayResult', 'certificate_count_replay', 'zp_certificate_count_replay',
]
