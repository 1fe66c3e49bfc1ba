"""Block-diagonal model of the Calkin algebra and its counterexample families."""

from .operators import MIN_TRUNCATION, BlockSequenceOperator, check_truncation
from .essential import (
    TOL_ESS,
    ESS_CLUSTER,
    EssentialReport,
    ClosedSumReport,
    windows,
    extrapolate,
    essential_norm_estimate,
    essential_leq,
    essential_spectrum_estimate,
    tail_sup_excluding_one,
    closed_sum_diagnostic,
)
from .families import (
    badpq_family,
    badpq_overlap,
    pomega_family,
    pomega_index,
    custom_family,
    constant_family,
    identity_like,
)

__all__ = [
    'MIN_TRUNCATION', 'BlockSequenceOperator', 'check_truncation',
    'TOL_ESS', 'ESS_CLUSTER', 'EssentialReport', 'ClosedSumReport', 'windows', 'extrapolate',
    'essential_norm_estimate', 'essential_leq', 'essential_spectrum_estimate',
    'tail_sup_excluding_one', 'closed_sum_diagnostic',
    'badpq_family', 'badpq_overlap', 'pomega_family', 'pomega_index', 'custom_family', 'constant_family', 'identity_like',
]
