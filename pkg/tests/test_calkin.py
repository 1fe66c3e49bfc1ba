import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.calkin import (
    BlockSequenceOperator,
    badpq_family,
    badpq_overlap,
    closed_sum_diagnostic,
    constant_family,
    custom_family,
    essential_leq,
    essential_norm_estimate,
    essential_spectrum_estimate,
    extrapolate,
    identity_like,
    pomega_family,
    pomega_index,
    tail_sup_excluding_one,
    windows,
)
from modules.errors import ArgumentError, ConfigError
from modules.projorder import meet_nullspace
from modules.spectra import Projection, operator_norm


@pytest.fixture(scope="module")
def badpq():
    return badpq_family(200)


@pytest.fixture(scope="module")
def pomega():
    return pomega_family(200)


def test_windows():
    assert windows(200) == [(25, 50), (50, 100), (100, 200)]


def test_extrapolation():
    assert extrapolate([1.0, 0.5, 0.25]) == pytest.approx(0.0, abs=1e-15)
    assert extrapolate([0.3, 0.3, 0.3]) == 0.3
    assert extrapolate([1.0, 0.6, 0.5]) == pytest.approx(0.5 - 0.01 / 0.3)
    assert extrapolate([0.1, 0.2, 0.3]) == 0.3


def test_truncation_validation():
    with pytest.raises(ConfigError):
        BlockSequenceOperator(lambda n: np.eye(1), 0)
    P, _ = badpq_family(4)
    with pytest.raises(ConfigError):
        essential_norm_estimate(P)
    with pytest.raises(ArgumentError):
        badpq_family(10)[0] - badpq_family(20)[1]


def test_badpq_block_overlaps_have_closed_form(badpq):
    P, Q = badpq
    assert badpq_overlap(0) == pytest.approx(0.5)
    for n in (0, 1, 7, 150):
        assert operator_norm(P.block(n) @ Q.block(n)) ** 2 == pytest.approx(badpq_overlap(n), abs=1e-12)


def test_badpq_has_equal_quotient_images(badpq):
    P, Q = badpq
    report = essential_norm_estimate(P - Q)
    assert report.estimate <= 2 / P.N
    assert report.converged
    assert report.extrapolated_limit <= 1e-6
    assert essential_leq(P, Q) and essential_leq(Q, P)


def test_badpq_truncations_meet_in_zero():
    P, Q = badpq_family(12)
    truncations = [Projection.from_matrix(X.truncation()) for X in (P, Q)]
    assert meet_nullspace(truncations).is_zero()


def test_pomega_index_reads_the_triangle_by_rows():
    assert [pomega_index(n) for n in range(10)] == [0, 0, 1, 0, 1, 2, 0, 1, 2, 3]


def test_pomega_essential_spectrum_keeps_every_overlap(pomega):
    P, Q = pomega
    persistent = essential_spectrum_estimate(P @ Q @ P)
    for target in (0.5, 0.8, 0.9):
        assert min(abs(v - target) for v in persistent) <= 1e-9


def test_pomega_tail_sup_grows_with_truncation(pomega):
    T = pomega[0] @ pomega[1]
    sups = [tail_sup_excluding_one(T.with_truncation(N)) for N in (25, 50, 100, 200)]
    assert all(b >= a for a, b in zip(sups, sups[1:]))
    assert sups[0] == pytest.approx(badpq_overlap(5))
    assert sups[1] == pytest.approx(badpq_overlap(8))


def test_adjoint_reverses_products(badpq):
    P, Q = badpq
    PQ, QP = P @ Q, Q @ P
    for n in (0, 7, 150):
        assert_allclose(PQ.adjoint().block(n), QP.block(n), atol=1e-12)
    assert PQ.adjoint().N == PQ.N


def test_essential_spectrum_of_constant_family():
    S = constant_family(np.diag([0.3, 0.7]), 40)
    assert_allclose(essential_spectrum_estimate(S), [0.3, 0.7], atol=1e-12)


def test_closed_sum_diagnostic_flags_badpq(badpq):
    P, Q = badpq
    report = closed_sum_diagnostic([P, Q], identity_like(P))
    assert report.heuristic
    assert not report.consistent_with_closed
    assert report.join_matches
    assert report.window_lower_bounds == sorted(report.window_lower_bounds, reverse=True)


def test_closed_sum_diagnostic_for_orthogonal_families():
    P = constant_family(np.diag([1.0, 0.0]), 40)
    Q = constant_family(np.diag([0.0, 1.0]), 40)
    report = closed_sum_diagnostic([P, Q], identity_like(P))
    assert report.consistent_with_closed
    assert report.join_matches
    assert report.lower_bound_limit == pytest.approx(1.0)


def test_custom_family_cycles_blocks():
    P, Q = custom_family([np.diag([1.0, 0.0])], [np.diag([0.0, 1.0])], 16)
    assert_allclose(P.block(7), np.diag([1.0, 0.0]))
    assert essential_norm_estimate(P @ Q).estimate == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ArgumentError):
        custom_family([np.eye(2)], [], 16)
    with pytest.raises(ArgumentError):
        custom_family([np.eye(2)], [np.eye(3)], 16)
