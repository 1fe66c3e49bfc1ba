"""The order on projections: comparisons, meets, joins and g.l.b. criteria."""

from modules.spectra import Projection
from .order import (
    check_nonempty,
    check_same_dim,
    leq,
    strictly_below,
    complement,
    product_operator,
    meet_nullspace,
    meet_spectral,
    join,
    join_span,
)
from .criteria import (
    GlbReport,
    NormCheckReport,
    NonzeroMeetReport,
    SpectrumIdentityReport,
    DualityReport,
    multiset_discrepancy,
    glb_criterion,
    glb_norm_check,
    nonzero_meet_check,
    spectrum_identity_report,
    lub_glb_duality_report,
)
from .separativity import WitnessReport, separativity_witness, witness_report
from .states import DensityState, CentredReport, state_centred_check

__all__ = [
    'Projection',
    'check_nonempty', 'check_same_dim',
    'leq', 'strictly_below', 'complement', 'product_operator',
    'meet_nullspace', 'meet_spectral', 'join', 'join_span',
    'GlbReport', 'NormCheckReport', 'NonzeroMeetReport', 'SpectrumIdentityReport', 'DualityReport',
    'multiset_discrepancy', 'glb_criterion', 'glb_norm_check', 'nonzero_meet_check',
    'spectrum_identity_report', 'lub_glb_duality_report',
    'WitnessReport', 'separativity_witness', 'witness_report',
    'DensityState', 'CentredReport', 'state_centred_check',
]
