import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.algebra import (
    BlockAlgebra,
    Morphism,
    apply,
    element_leq,
    elements_close,
    interpolate_pregap,
    kernel_blocks,
    lift,
    pullback_projection,
    pushforward_spectral_bound_check,
    quotient_is_block_algebra,
    sandwich_pullback,
)
from modules.errors import ArgumentError, OrderError
from services.instance_generator import InstanceGenerator
from tests.conftest import line

SOURCE = BlockAlgebra.of([2, 1])
QUOTIENT = Morphism.quotient(SOURCE, [0])
DIAGONAL_LINE = line(math.pi / 4).matrix


def test_block_algebra_validation():
    with pytest.raises(ArgumentError):
        BlockAlgebra.of([])
    with pytest.raises(ArgumentError):
        BlockAlgebra.of([2, 0])
    with pytest.raises(ArgumentError):
        SOURCE.element([np.eye(2)])
    with pytest.raises(ArgumentError):
        SOURCE.element([np.eye(2), np.eye(2)])


def test_algebra_dimension_and_dense_form():
    x = SOURCE.element([np.diag([1.0, 2.0]), [[3.0]]])
    assert SOURCE.dim == 3
    assert_allclose(x.dense(), np.diag([1.0, 2.0, 3.0]))
    assert x.norm() == pytest.approx(3.0)


def test_morphism_rejects_non_unitary_conjugation():
    with pytest.raises(ArgumentError):
        Morphism.from_assignment(SOURCE, [(0, 2 * np.eye(2))])
    with pytest.raises(ArgumentError):
        Morphism.from_assignment(SOURCE, [(5, np.eye(1))])


def test_quotient_structure():
    m = Morphism.quotient(BlockAlgebra.of([2, 1, 2]), [2, 0])
    assert m.target.block_dims == (2, 2)
    assert kernel_blocks(m) == (1,)
    assert m.is_surjective
    assert quotient_is_block_algebra(m)


def test_repeated_source_block_is_not_surjective():
    m = Morphism.from_assignment(SOURCE, [(0, np.eye(2)), (0, np.eye(2))])
    assert not m.is_surjective
    with pytest.raises(ArgumentError):
        lift(m, m.target.identity())


def test_lift_is_a_section():
    rng = np.random.default_rng(3)
    m = InstanceGenerator.quotient_morphism(rng)
    y = m.target.element([InstanceGenerator.hermitian(rng, d) for d in m.target.block_dims])
    assert elements_close(apply(m, lift(m, y)), y, 1e-10)


def test_pullback_of_a_line():
    q = QUOTIENT.target.element([DIAGONAL_LINE])
    Q = pullback_projection(QUOTIENT, q, SOURCE.identity())
    assert_allclose(Q.blocks[0], DIAGONAL_LINE, atol=1e-9)
    assert_allclose(Q.blocks[1], [[0.0]], atol=1e-12)


def test_pullback_needs_q_below_image():
    q = QUOTIENT.target.element([DIAGONAL_LINE])
    P = SOURCE.element([np.diag([1.0, 0.0]), [[0.0]]])
    with pytest.raises(OrderError):
        pullback_projection(QUOTIENT, q, P)


def test_pullback_rejects_non_projection():
    q = QUOTIENT.target.element([np.diag([0.5, 0.0])])
    with pytest.raises(ArgumentError):
        pullback_projection(QUOTIENT, q, SOURCE.identity())


def test_sandwich_pullback_keeps_the_kernel_part_of_r():
    q = QUOTIENT.target.element([DIAGONAL_LINE])
    R = SOURCE.element([np.zeros((2, 2)), [[1.0]]])
    P = SOURCE.identity()
    Q = sandwich_pullback(QUOTIENT, q, R, P)
    assert_allclose(Q.blocks[0], DIAGONAL_LINE, atol=1e-9)
    assert_allclose(Q.blocks[1], [[1.0]], atol=1e-9)
    assert element_leq(R, Q) and element_leq(Q, P)


@pytest.mark.parametrize("seed", range(8))
def test_sandwich_pullback_on_random_instances(seed):
    rng = np.random.default_rng(seed)
    m = InstanceGenerator.quotient_morphism(rng, min_target_dim=2)
    r, p, q = InstanceGenerator.nested_block_projections(rng, m)
    R, P, q = m.source.element(r), m.source.element(p), m.target.element(q)
    Q = sandwich_pullback(m, q, R, P)
    assert elements_close(apply(m, Q), q, 1e-8)
    assert element_leq(R, Q) and element_leq(Q, P)


def test_interpolation_of_a_pregap():
    m = Morphism.quotient(BlockAlgebra.of([3, 1]), [0])
    ps = [m.target.element([np.diag([1.0, 0.0, 0.0])])]
    qs = [m.target.identity()]
    image = apply(m, interpolate_pregap(m, ps, qs))
    assert_allclose(image.blocks[0], np.diag([1.0, 1.0, 0.0]), atol=1e-9)


def test_interpolation_with_rank_one_gap_returns_lower_endpoint():
    m = Morphism.quotient(BlockAlgebra.of([3]), [0])
    ps = [m.target.element([np.diag([1.0, 0.0, 0.0])])]
    qs = [m.target.element([np.diag([1.0, 1.0, 0.0])])]
    image = apply(m, interpolate_pregap(m, ps, qs))
    assert elements_close(image, ps[0], 1e-9)


def test_interpolation_needs_a_pregap():
    m = Morphism.quotient(BlockAlgebra.of([2]), [0])
    with pytest.raises(OrderError):
        interpolate_pregap(m, [m.target.identity()], [m.target.identity()])


@pytest.mark.parametrize("seed", range(8))
def test_interpolation_on_random_pregaps(seed):
    rng = np.random.default_rng(100 + seed)
    m = InstanceGenerator.quotient_morphism(rng, min_target_dim=2)
    ps, qs = InstanceGenerator.pregap(rng, m.target)
    ps = [m.target.element(b) for b in ps]
    qs = [m.target.element(b) for b in qs]
    image = apply(m, interpolate_pregap(m, ps, qs))
    assert all(element_leq(p, image) for p in ps)
    assert all(element_leq(image, q) for q in qs)


def test_spectral_bounds_pass_to_the_quotient():
    S = SOURCE.element([np.diag([0.2, 0.8]), [[0.5]]])
    P = SOURCE.element([np.diag([1.0, 0.0]), [[0.0]]])
    assert pushforward_spectral_bound_check(QUOTIENT, P, S, 0.5)


@pytest.mark.parametrize("seed", range(8))
def test_spectral_bounds_on_random_instances(seed):
    rng = np.random.default_rng(200 + seed)
    m = InstanceGenerator.quotient_morphism(rng)
    s_blocks = [InstanceGenerator.hermitian(rng, d) for d in m.source.block_dims]
    t = float(rng.uniform(-1.5, 1.5))
    p_blocks = InstanceGenerator.spectral_subprojection(rng, s_blocks, t, upper=bool(seed % 2))
    assert pushforward_spectral_bound_check(m, m.source.element(p_blocks), m.source.element(s_blocks), t)
