"""
Pulling projections back through a surjective block morphism while keeping
order relations, and interpolating finite pregaps in the quotient.
"""

import logging
from typing import Sequence

from modules.errors import ArgumentError, ConstructionError, OrderError
from modules.spectra import (
    DEFAULT_TOLERANCES,
    Projection,
    ToleranceConfig,
    spectral_family_at,
    spectral_window_projection,
)
from .blocks import AlgebraElement, Morphism, apply, element_leq, elements_close, lift

logger = logging.getLogger(__name__)

# δ in the window E⊥_{PSP}(1/2 + δ) ≤ Q ≤ E⊥_{PSP}(1/2 − δ); any δ in (0, 1/2) works.
WINDOW_DELTA = 0.25


def _require_projection(x: AlgebraElement, what: str) -> None:
    if not x.is_projection():
        raise ArgumentError(f"{what} is not a projection")


def _require_surjective(m: Morphism) -> None:
    if not m.is_surjective:
        raise ArgumentError("pullbacks need a surjective morphism")


def _verify(m: Morphism, Q: AlgebraElement, q: AlgebraElement, lower: AlgebraElement,
            upper: AlgebraElement, cfg: ToleranceConfig) -> None:
    if not elements_close(apply(m, Q), q, cfg.order_tol):
        raise ConstructionError("pulled-back projection does not map onto the target")
    if not (element_leq(lower, Q, cfg) and element_leq(Q, upper, cfg)):
        raise ConstructionError("pulled-back projection violates the order bounds")


def pullback_projection(m: Morphism, q: AlgebraElement, P: AlgebraElement,
                        cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> AlgebraElement:
    """Q ≤ P with π(Q) = q, for a projection q ≤ π(P)."""
    _require_surjective(m)
    _require_projection(q, "target projection q")
    _require_projection(P, "source projection P")
    if not element_leq(q, apply(m, P), cfg):
        raise OrderError("q is not below π(P)")

    S = lift(m, q).real_part()
    s, t = 0.5 + WINDOW_DELTA, 0.5 - WINDOW_DELTA
    blocks = []
    for p_b, s_b in zip(P.blocks, S.blocks):
        blocks.append(spectral_window_projection(p_b @ s_b @ p_b, s, t, cfg).matrix)
    Q = AlgebraElement(m.source, tuple(blocks))
    _verify(m, Q, q, m.source.zero(), P, cfg)
    return Q


def sandwich_pullback(m: Morphism, q: AlgebraElement, R: AlgebraElement, P: AlgebraElement,
                      cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> AlgebraElement:
    """R ≤ Q ≤ P with π(Q) = q, for π(R) ≤ q ≤ π(P)."""
    _require_surjective(m)
    for x, what in ((q, "target projection q"), (R, "lower projection R"), (P, "upper projection P")):
        _require_projection(x, what)
    if not element_leq(R, P, cfg):
        raise OrderError("R is not below P")
    if not (element_leq(apply(m, R), q, cfg) and element_leq(q, apply(m, P), cfg)):
        raise OrderError("q is not between π(R) and π(P)")

    S = pullback_projection(m, q, P, cfg)
    T = pullback_projection(m, apply(m, P - S), P - R, cfg)
    Q = P - T
    _verify(m, Q, q, R, P, cfg)
    return Q


def _is_increasing(xs: Sequence[AlgebraElement], cfg: ToleranceConfig) -> bool:
    return all(element_leq(a, b, cfg) for a, b in zip(xs, xs[1:]))


def _strictly_below(x: AlgebraElement, y: AlgebraElement, cfg: ToleranceConfig) -> bool:
    return element_leq(x, y, cfg) and not elements_close(x, y, cfg.order_tol)


def _strict_interpolant(p: AlgebraElement, q: AlgebraElement, cfg: ToleranceConfig) -> AlgebraElement:
    """p plus one direction of q − p when q − p has rank ≥ 2; p otherwise."""
    gap = [Projection.from_matrix(b, cfg) for b in (q - p).blocks]
    if sum(g.rank for g in gap) < 2:
        logger.debug("degenerate pregap: q − p has rank 1, returning the lower endpoint")
        return p
    blocks = list(p.blocks)
    for i, g in enumerate(gap):
        if g.rank:
            v = g.range_basis[:, :1]
            blocks[i] = p.blocks[i] + v @ v.conj().T
            break
    return AlgebraElement(p.algebra, tuple(blocks))


def interpolate_pregap(m: Morphism, ps: Sequence[AlgebraElement], qs: Sequence[AlgebraElement],
                       cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> AlgebraElement:
    """
    Source projection whose image lies between every p in ps and every q in qs.

    Pullbacks of ps (increasing) and qs (decreasing) are chosen alternately,
    each sandwiched between the previous choices.
    """
    _require_surjective(m)
    for x in (*ps, *qs):
        if x.algebra != m.target:
            raise ArgumentError("pregap elements must live in the morphism target")
        _require_projection(x, "pregap element")
    if not _is_increasing(ps, cfg) or not _is_increasing(list(reversed(qs)), cfg):
        raise OrderError("lower family must increase and upper family must decrease")
    if not all(_strictly_below(p, q, cfg) for p in ps for q in qs):
        raise OrderError("not a pregap: some lower element is not strictly below some upper element")

    lower, upper = m.source.zero(), m.source.identity()
    for k in range(max(len(ps), len(qs))):
        if k < len(ps):
            lower = sandwich_pullback(m, ps[k], lower, upper, cfg)
        if k < len(qs):
            upper = sandwich_pullback(m, qs[k], lower, upper, cfg)

    top = apply(m, lower) if ps else m.target.zero()
    bottom = apply(m, upper) if qs else m.target.identity()
    r = _strict_interpolant(top, bottom, cfg)
    return sandwich_pullback(m, r, lower, upper, cfg)


def pushforward_spectral_bound_check(m: Morphism, P: AlgebraElement, S: AlgebraElement, t: float,
                                     cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """
    P ≤ E_S(t) ⇒ π(P) ≤ E_{π(S)}(t), and E_S(t−) ≤ P ⇒ E_{π(S)}(t−) ≤ π(P).
    """
    _require_projection(P, "P")
    if not S.is_self_adjoint():
        raise ArgumentError("S is not self-adjoint")

    def family(x: AlgebraElement, side: str) -> AlgebraElement:
        return AlgebraElement(x.algebra, tuple(spectral_family_at(b, t, side, cfg).matrix for b in x.blocks))

    pi_p, pi_s = apply(m, P), apply(m, S)
    upper_ok = not element_leq(P, family(S, "closed"), cfg) or element_leq(pi_p, family(pi_s, "closed"), cfg)
    lower_ok = not element_leq(family(S, "open_below"), P, cfg) or element_leq(family(pi_s, "open_below"), pi_p, cfg)
    return upper_ok and lower_ok


def quotient_is_block_algebra(m: Morphism) -> bool:
    """The image of a surjective morphism is again a block algebra (its target)."""
    return m.is_surjective and m.image_algebra() == m.target
