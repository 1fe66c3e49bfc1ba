"""Block-diagonal C*-algebras, quotient morphisms and pullback constructions."""

from .blocks import (
    BlockAlgebra,
    AlgebraElement,
    Morphism,
    apply,
    lift,
    kernel_blocks,
    element_leq,
    elements_close,
)
from .pullbacks import (
    WINDOW_DELTA,
    pullback_projection,
    sandwich_pullback,
    interpolate_pregap,
    pushforward_spectral_bound_check,
    quotient_is_block_algebra,
)

__all__ = [
    'BlockAlgebra', 'AlgebraElement', 'Morphism',
    'apply', 'lift', 'kernel_blocks', 'element_leq', 'elements_close',
    'WINDOW_DELTA', 'pullback_projection', 'sandwich_pullback', 'interpolate_pregap',
    'pushforward_spectral_bound_check', 'quotient_is_block_algebra',
]
