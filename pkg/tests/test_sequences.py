import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.errors import ArgumentError, ConfigError, ConstructionError
from modules.projorder import join_span, leq, meet_nullspace
from modules.sequences import (
    GapCertificate,
    ScheduleConfig,
    chain_bound_report,
    decreasing_equalizer_recursive,
    decreasing_equalizer_spectral,
    ee_inequality_check,
    gap_element,
    gap_function,
    increasing_equalizer,
    range_product_projection,
    spectral_sandwich_sequence,
    techcon_check,
)
from modules.spectra import Projection, frobenius_distance
from services.instance_generator import InstanceGenerator
from tests.conftest import diag_projection, line

FAMILY = [diag_projection(1, 1, 0), diag_projection(0, 1, 1)]


def _is_decreasing(qs, tol=1e-8):
    return all(leq(b, a) or frobenius_distance(b.matrix, a.matrix @ b.matrix) <= tol for a, b in zip(qs, qs[1:]))


# ----- schedule -----

def test_schedule_values():
    sched = ScheduleConfig()
    assert sched.exact(0, 5) == 0
    assert sched.exact(1, 0) == 1 - Fraction(1, 2 ** 6)
    assert sched.exact(1, 1) == 1 - Fraction(1, 3 ** 6)
    assert sched.t(2, 1) > sched.t(1, 1)


def test_schedule_cutoff_is_clamped_below_one():
    sched = ScheduleConfig()
    eps = 1e-9
    assert sched.cutoff(8, 1, eps) == pytest.approx(1 - 2 * eps)
    assert sched.is_clamped(8, 1, eps)
    assert not sched.is_clamped(1, 1, eps)


def test_schedule_validation():
    with pytest.raises(ConfigError):
        ScheduleConfig(depth=1)
    with pytest.raises(ConfigError):
        ScheduleConfig(depth=4).exact(5, 0)
    with pytest.raises(ConfigError):
        ScheduleConfig().exact(-1, 0)


# ----- equalizers -----

def test_recursive_equalizer_on_coordinate_family():
    qs = decreasing_equalizer_recursive(FAMILY)
    assert [q.rank for q in qs] == [2, 1]
    assert_allclose(qs[0].matrix, FAMILY[0].matrix, atol=1e-12)
    assert_allclose(qs[1].matrix, np.diag([0, 1, 0]), atol=1e-12)


def test_spectral_equalizer_on_coordinate_family():
    qs = decreasing_equalizer_spectral(FAMILY)
    assert [q.rank for q in qs] == [2, 1]
    raw = spectral_sandwich_sequence(FAMILY, length=len(qs))
    assert chain_bound_report(FAMILY, raw).holds


def test_increasing_equalizer_on_coordinate_family():
    qs = increasing_equalizer(FAMILY)
    assert [q.rank for q in qs] == [2, 3]
    assert_allclose(qs[-1].matrix, np.eye(3), atol=1e-12)


def test_single_projection_is_its_own_equalizer():
    P = diag_projection(1, 0, 1)
    assert frobenius_distance(decreasing_equalizer_recursive([P])[0], P) <= 1e-12
    assert frobenius_distance(increasing_equalizer([P])[0], P) <= 1e-12


@pytest.mark.parametrize("seed", range(6))
def test_equalizers_keep_meet_and_join(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    raw, _ = InstanceGenerator.family_with_meet(rng, n, int(rng.integers(2, 5)), int(rng.integers(0, n)))
    ps = [Projection.from_matrix(p) for p in raw]
    oracle = meet_nullspace(ps)

    recursive = decreasing_equalizer_recursive(ps)
    spectral = decreasing_equalizer_spectral(ps)
    assert _is_decreasing(recursive)
    assert _is_decreasing(spectral)
    assert frobenius_distance(meet_nullspace(recursive), oracle) <= 1e-6
    assert frobenius_distance(meet_nullspace(spectral), oracle) <= 1e-6

    increasing = increasing_equalizer(ps)
    assert frobenius_distance(join_span(increasing), join_span(ps)) <= 1e-6


def test_range_product_projection():
    P = range_product_projection(FAMILY, 1)
    assert_allclose(P.matrix, np.diag([0, 1, 0]), atol=1e-12)


def test_techcon_partial_sums_for_constant_family():
    P = diag_projection(1, 1, 0)
    report = techcon_check([P, P, P])
    assert_allclose(report.partial_sums, [0.0, 0.0, 0.0], atol=1e-12)
    assert report.decreasing_tail
    assert report.bound_excess <= 0.0


def test_techcon_bound_excess_flags_large_sums():
    report = techcon_check([line(0.0), line(math.pi / 2)])
    assert_allclose(report.partial_sums, [0.0, 1.0], atol=1e-12)
    assert report.bound_excess == pytest.approx(0.5)


@pytest.mark.parametrize("seed", range(6))
def test_sandwich_terms_have_small_partial_sums(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(2, 6))
    raw, _ = InstanceGenerator.family_with_meet(rng, n, int(rng.integers(2, 5)), int(rng.integers(0, n)))
    ps = [Projection.from_matrix(p) for p in raw]
    terms = spectral_sandwich_sequence(ps, length=len(decreasing_equalizer_spectral(ps)))
    report = techcon_check(terms)
    assert report.bound_excess <= len(terms) * 1e-8
    assert techcon_check(decreasing_equalizer_spectral(ps)).bound_excess <= 1e-8


# ----- norm estimate -----

def test_spectral_family_inequality_worked_example():
    report = ee_inequality_check(np.diag([1.0, 0.0]), line(math.pi / 4), s=0.25, t=0.0)
    assert report.lhs == pytest.approx(0.5)
    assert report.rhs == pytest.approx(0.75)
    assert report.holds


def test_spectral_family_inequality_argument_ranges():
    with pytest.raises(ArgumentError):
        ee_inequality_check(np.diag([1.0, 0.0]), line(0.0), s=1.0, t=0.0)
    with pytest.raises(ArgumentError):
        ee_inequality_check(np.eye(3), line(0.0), s=0.1, t=0.0)


@pytest.mark.parametrize("seed", range(10))
def test_spectral_family_inequality_on_random_instances(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    S = InstanceGenerator.hermitian(rng, n)
    norm = float(np.linalg.norm(S, 2))
    P = Projection.from_matrix(InstanceGenerator.projection(rng, n))
    report = ee_inequality_check(S, P, float(rng.uniform(0, 0.9 * norm)), float(rng.uniform(-norm, 0.9 * norm)))
    assert report.holds


# ----- gap element -----

def test_gap_function_shape():
    f = gap_function(0.5)
    assert f(0.0) == pytest.approx(-1.0)
    assert f(0.25) == pytest.approx(-1.0)
    assert f(0.375) == pytest.approx(0.125)
    assert f(1.0) == pytest.approx(0.125)


def test_gap_element_for_lines_at_quarter_turn():
    P, Q = line(0.0), line(math.pi / 4)
    cert = gap_element(P, Q)
    assert cert.r == pytest.approx(0.5)
    assert_allclose(cert.S.matrix, np.diag([0.125, -1.0]), atol=1e-9)
    assert cert.pos_value == pytest.approx(0.125)
    assert cert.neg_value == pytest.approx(-1.0)
    assert cert.holds()


def test_failed_certificate_is_returned_not_raised(monkeypatch):
    monkeypatch.setattr(GapCertificate, "holds", lambda self, cfg=None: False)
    cert = gap_element(line(0.0), line(math.pi / 4))
    assert cert.r == pytest.approx(0.5)
    assert not cert.holds()


def test_gap_element_rejects_commuting_pair():
    with pytest.raises(ConstructionError):
        gap_element(diag_projection(1, 0, 0), diag_projection(1, 1, 0))


@pytest.mark.parametrize("seed", range(6))
def test_gap_element_on_random_pairs(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    P = Projection.from_matrix(InstanceGenerator.projection(rng, n))
    Q = Projection.from_matrix(InstanceGenerator.projection(rng, n))
    assert gap_element(P, Q).holds()
