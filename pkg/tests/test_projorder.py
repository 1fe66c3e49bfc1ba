import math

import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from modules.errors import ArgumentError, OrderError
from modules.projorder import (
    DensityState,
    complement,
    glb_criterion,
    glb_norm_check,
    join,
    join_span,
    leq,
    lub_glb_duality_report,
    meet_nullspace,
    meet_spectral,
    multiset_discrepancy,
    nonzero_meet_check,
    separativity_witness,
    spectrum_identity_report,
    state_centred_check,
    strictly_below,
    witness_report,
)
from modules.projorder.separativity import separativity_level
from modules.spectra import DEFAULT_TOLERANCES, Projection, ToleranceConfig, frobenius_distance
from services.instance_generator import InstanceGenerator
from tests.conftest import diag_projection, dims, line, random_projection, seeds

LOOSE = ToleranceConfig(order_tol=1e-6)


def test_order_on_coordinate_projections():
    P, Q = diag_projection(1, 0, 0), diag_projection(1, 1, 0)
    assert leq(P, Q)
    assert not leq(Q, P)
    assert strictly_below(P, Q)
    assert not strictly_below(Q, Q)


def test_dimension_mismatch_is_rejected():
    with pytest.raises(ArgumentError):
        leq(diag_projection(1, 0), diag_projection(1, 0, 0))
    with pytest.raises(ArgumentError):
        meet_spectral([])


def test_meet_and_join_of_coordinate_projections():
    P, Q = diag_projection(1, 1, 0), diag_projection(0, 1, 1)
    assert_allclose(meet_spectral([P, Q]).matrix, np.diag([0, 1, 0]), atol=1e-12)
    assert_allclose(join([P, Q]).matrix, np.eye(3), atol=1e-12)


def test_lines_in_general_position_meet_in_zero():
    P, Q = line(0.0), line(math.pi / 5)
    assert meet_spectral([P, Q]).is_zero()
    assert join([P, Q]).rank == 2


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=dims)
def test_spectral_meet_matches_nullspace_meet(seed, n):
    rng = np.random.default_rng(seed)
    meet_rank = int(rng.integers(0, n))
    ps, _ = InstanceGenerator.family_with_meet(rng, n, 3, meet_rank)
    ps = [Projection.from_matrix(p) for p in ps]
    spectral = meet_spectral(ps)
    assert frobenius_distance(spectral, meet_nullspace(ps)) <= 1e-6
    assert spectral.rank >= meet_rank
    for p in ps:
        assert leq(spectral, p, LOOSE)


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=dims)
def test_join_matches_span(seed, n):
    rng = np.random.default_rng(seed)
    ps = [random_projection(rng, n) for _ in range(2)]
    assert frobenius_distance(join(ps), join_span(ps)) <= 1e-6


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=dims)
def test_complement_is_an_involution(seed, n):
    P = random_projection(np.random.default_rng(seed), n)
    assert_allclose(P.matrix + complement(P).matrix, np.eye(n), atol=1e-9)
    assert frobenius_distance(complement(complement(P)), P) <= 1e-9


def test_glb_criterion_for_lines_at_quarter_turn():
    report = glb_criterion([line(0.0), line(math.pi / 4)])
    assert report.sup_sigma_excl_one == pytest.approx(0.5)
    assert report.criterion_holds
    assert report.meet.is_zero()
    assert report.norm_gap == pytest.approx(math.sqrt(0.5))


def test_glb_criterion_for_equal_projections():
    P = diag_projection(1, 1, 0)
    report = glb_criterion([P, P])
    assert report.criterion_holds
    assert report.meet.rank == 2
    assert report.norm_gap == pytest.approx(0.0, abs=1e-12)


def test_glb_norm_check():
    ps = [line(0.0), line(math.pi / 3)]
    report = glb_norm_check(ps, Projection.zero(2))
    assert report.is_glb and report.is_below_all
    assert report.norm == pytest.approx(0.5)

    P = line(0.0)
    report = glb_norm_check([P, P], Projection.zero(2))
    assert report.is_below_all
    assert not report.is_glb


def test_nonzero_meet_check_agrees_with_pq_norm():
    overlapping = nonzero_meet_check(diag_projection(1, 1, 0), diag_projection(0, 1, 1))
    assert overlapping.meet_nonzero and overlapping.consistent
    assert overlapping.pq_norm == pytest.approx(1.0)

    apart = nonzero_meet_check(line(0.0), line(1.0))
    assert not apart.meet_nonzero and apart.consistent


@pytest.mark.parametrize("seed", range(8))
def test_spectral_identities_on_random_pairs(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    P, Q = random_projection(rng, n), random_projection(rng, n)
    report = spectrum_identity_report(P, Q)
    assert report.max_discrepancy <= 1e-6
    assert report.pq_norm_squared == pytest.approx(report.pqp_max_eigenvalue, abs=1e-9)


def test_duality_for_lines():
    theta = 0.4
    report = lub_glb_duality_report(line(0.0), line(theta))
    assert_allclose(report.pq_window, [math.cos(theta) ** 2], atol=1e-9)
    assert report.discrepancy <= 1e-9


def test_multiset_discrepancy_charges_unmatched_values_to_edges():
    assert multiset_discrepancy([0.3], [0.3 + 1e-9], lo=0.0) == pytest.approx(1e-9, abs=1e-12)
    assert multiset_discrepancy([0.5], [], lo=0.0, hi=1.0) == pytest.approx(0.5)
    assert multiset_discrepancy([0.9], [], lo=0.0, hi=1.0) == pytest.approx(0.1)
    assert multiset_discrepancy([], [], lo=0.0) == 0.0


def test_separativity_witness_at_sixty_degrees():
    P, Q = line(0.0), line(math.pi / 3)
    assert separativity_level(P, Q) == pytest.approx(3 / 8)
    R = separativity_witness(P, Q)
    assert frobenius_distance(R, P) <= 1e-9
    report = witness_report(P, Q, R)
    assert report.holds
    assert report.qr_norm == pytest.approx(0.5)
    assert report.qr_bound == pytest.approx(math.sqrt(5 / 8))


def test_separativity_witness_for_nearly_parallel_lines():
    P, Q = line(0.0), line(1e-6)
    assert not leq(P, Q)
    assert separativity_level(P, Q) < DEFAULT_TOLERANCES.eig_cluster
    R = separativity_witness(P, Q)
    assert R.rank == 1
    assert frobenius_distance(R, P) <= 1e-9
    assert witness_report(P, Q, R).holds


def test_separativity_needs_incomparable_pair():
    with pytest.raises(OrderError):
        separativity_witness(diag_projection(1, 0, 0), diag_projection(1, 1, 0))


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=dims)
def test_separativity_witness_bounds_hold(seed, n):
    rng = np.random.default_rng(seed)
    P, Q = random_projection(rng, n), random_projection(rng, n)
    if leq(P, Q) or separativity_level(P, Q) <= 1e-6:
        return
    assert witness_report(P, Q, separativity_witness(P, Q)).holds


def test_states_supported_on_a_common_vector_are_centred():
    rho = DensityState.pure([0.0, 1.0, 0.0])
    report = state_centred_check(rho, [diag_projection(1, 1, 0), diag_projection(0, 1, 1)])
    assert report.all_one
    assert report.product_norm == pytest.approx(1.0)
    assert report.consistent


def test_density_state_validation():
    with pytest.raises(ArgumentError):
        DensityState.from_matrix(np.zeros((0, 0)))
    with pytest.raises(ValueError):
        DensityState.from_matrix(np.diag([0.5, 0.25]))
    assert DensityState.from_matrix(np.diag([0.5, 0.5])).expectation(diag_projection(1, 0)) == pytest.approx(0.5)
