"""
Coefficient densities, perturbation specs and the staircase decomposition.
"""

from .base_density import ZERO, DensitySpec, ZeroSpec, phi, sample
from .uniform import UniformDensity
from .triangular import TriangularDensity
from .gaussian import TruncatedGaussianDensity
from .bimodal import BimodalUniformDensity
from .perturbation import (
    DENSITY_FAMILIES, PerturbationSpec, canonicalize_unperturbed, density_from_dict,
    make_density, zp_normal_form, zp_normal_form_instance,
)
from .staircase import Rectangle, Staircase, staircase_decompose

__all__ = [
    'ZERO', 'DensitySpec', 'ZeroSpec', 'phi', 'sample',
    'UniformDensity', 'TriangularDensity', 'TruncatedGaussianDensity', 'BimodalUniformDensity',
    'DENSITY_FAMILIES', 'PerturbationSpec', 'canonicalize_unperturbed', 'density_from_dict',
    'make_density', 'zp_normal_form', 'zp_normal_form_instance',
    'Rectangle', 'Staircase', 'staircase_decompose',
]
