"""Sequence constructions: equalizers, norm estimates and the gap element."""

from .schedule import ScheduleConfig, DEFAULT_DEPTH
from .equalizers import (
    decreasing_equalizer_recursive,
    decreasing_equalizer_spectral,
    spectral_sandwich_sequence,
    range_product_projection,
    increasing_equalizer,
)
from .estimates import (
    EEReport,
    TechconReport,
    ChainBoundReport,
    ee_inequality_check,
    techcon_check,
    chain_bound_report,
)
from .gap import GapCertificate, gap_element, gap_function

__all__ = [
    'ScheduleConfig', 'DEFAULT_DEPTH',
    'decreasing_equalizer_recursive', 'decreasing_equalizer_spectral', 'spectral_sandwich_sequence',
    'range_product_projection', 'increasing_equalizer',
    'EEReport', 'TechconReport', 'ChainBoundReport',
    'ee_inequality_check', 'techcon_check', 'chain_bound_report',
    'GapCertificate', 'gap_element', 'gap_function',
]
