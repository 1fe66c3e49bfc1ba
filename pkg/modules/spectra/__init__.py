"""Numeric substrate: Hermitian decomposition, spectral families, functional calculus."""

from .tolerance import ToleranceConfig, DEFAULT_TOLERANCES
from .operators import HermitianOperator, Projection
from .subspaces import as_matrix, canonical_basis, null_basis, range_basis
from .norms import operator_norm, frobenius_distance
from .decomposition import (
    SpectralDecomposition,
    decompose,
    spectral_family_at,
    upper_family_at,
    spectrum,
    nonsym_spectrum,
    spectral_window_projection,
    hermitian_eigenvalues,
)
from .functions import PiecewiseLinearFunction, apply_function

__all__ = [
    'ToleranceConfig', 'DEFAULT_TOLERANCES',
    'HermitianOperator', 'Projection',
    'as_matrix', 'canonical_basis', 'null_basis', 'range_basis',
    'operator_norm', 'frobenius_distance',
    'SpectralDecomposition', 'decompose', 'spectral_family_at', 'upper_family_at',
    'spectrum', 'nonsym_spectrum', 'spectral_window_projection', 'hermitian_eigenvalues',
    'PiecewiseLinearFunction', 'apply_function',
]
