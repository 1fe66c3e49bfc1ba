import asyncio
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.algebra import BlockAlgebra, Morphism
from modules.errors import ArgumentError, ConfigError, NumericInputError
from modules.spectra import DEFAULT_TOLERANCES, Projection
from services.instance_generator import GENERATOR_VERSION, InstanceGenerator
from services.serialization_service import SerializationService as ser
from services.verification_service import VerificationService
from services.verification_suites import SUITES, SUITES_BY_NAME, outcome
from tests.conftest import line


# ----- serialization -----

def test_malformed_json_reports_position():
    with pytest.raises(NumericInputError, match="line 2, column"):
        ser.loads('{"dim": 2,\n  "entries": [1, }')


def test_missing_file_is_an_argument_error(tmp_path):
    with pytest.raises(ArgumentError):
        ser.load_file(str(tmp_path / "absent.json"))


def test_matrix_json_validation():
    assert_allclose(ser.matrix_from_json({"dim": 1, "entries": [[0.5, -1.0]]}), [[0.5 - 1.0j]])
    with pytest.raises(NumericInputError):
        ser.matrix_from_json({"dim": 2, "entries": [1, 0, 0]})
    with pytest.raises(NumericInputError):
        ser.matrix_from_json({"dim": 1, "entries": [True]})
    with pytest.raises(NumericInputError):
        ser.matrix_from_json({"entries": []})


def test_projection_from_range_basis():
    P = ser.projection_from_json({"dim": 2, "range_basis": [[1, 1]]})
    assert_allclose(P.matrix, line(math.pi / 4).matrix, atol=1e-12)
    assert ser.projection_from_json({"dim": 3, "range_basis": []}).is_zero()


def test_projection_list_forms():
    doc = {"P": ser.matrix_to_json(np.diag([1, 0])), "Q": ser.matrix_to_json(np.diag([0, 1]))}
    assert [p.rank for p in ser.projection_list_from_json(doc)] == [1, 1]
    assert len(ser.projection_list_from_json({"projections": [doc["P"]]})) == 1
    with pytest.raises(NumericInputError):
        ser.projection_list_from_json([])


def test_to_jsonable_handles_reports_and_numbers():
    value = ser.to_jsonable({"p": Projection.zero(1), "z": 1 + 2j, "x": float("inf"), "v": np.array([1j])})
    assert value == {
        "p": {"dim": 1, "entries": [[0.0, 0.0]]},
        "z": [1.0, 2.0],
        "x": "inf",
        "v": [[0.0, 1.0]],
    }
    assert json.loads(ser.dumps({"b": 1, "a": 2})) == {"a": 2, "b": 1}
    assert ser.dumps({"b": 1, "a": 2}).index('"a"') < ser.dumps({"b": 1, "a": 2}).index('"b"')


def test_morphism_json_round_trip_keeps_assignment():
    m = Morphism.quotient(BlockAlgebra.of([2, 1, 3]), [2, 0])
    back = ser.morphism_from_json(json.loads(ser.dumps(m)))
    assert back.source == m.source and back.target == m.target
    assert [s for s, _ in back.assignment] == [2, 0]


def test_element_json_rejects_wrong_algebra():
    x = BlockAlgebra.of([1]).identity()
    with pytest.raises(ArgumentError):
        ser.element_from_json(ser.element_to_json(x), BlockAlgebra.of([2]))


def test_custom_family_file(tmp_path):
    blocks = {"P": [ser.matrix_to_json(np.diag([1, 0]))], "Q": [ser.matrix_to_json(np.diag([0, 1]))]}
    (tmp_path / "blocks.json").write_text(json.dumps(blocks))
    P, Q = ser.family_from_json({"family": "custom", "N": 16, "custom_blocks_path": "blocks.json"},
                                base_dir=str(tmp_path))
    assert P.N == 16
    assert_allclose(Q.block(3), np.diag([0, 1]))
    with pytest.raises(ArgumentError):
        ser.build_family("custom", 16)
    with pytest.raises(ArgumentError):
        ser.build_family("nope", 16)


# ----- instance generation -----

def test_seed_validation():
    for bad in (-1, 2 ** 64, 1.5, True):
        with pytest.raises(ConfigError):
            InstanceGenerator(bad)


def test_streams_depend_only_on_seed_suite_and_index():
    a, b = InstanceGenerator(7), InstanceGenerator(7)
    assert_allclose(a.rng(2, 5).random(4), b.rng(2, 5).random(4))
    assert not np.allclose(a.rng(2, 5).random(4), a.rng(2, 6).random(4))
    assert not np.allclose(a.rng(2, 5).random(4), a.rng(3, 5).random(4))


def test_random_unitary_and_projection():
    rng = np.random.default_rng(1)
    U = InstanceGenerator.unitary(rng, 4)
    assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-12)
    P = InstanceGenerator.projection(rng, 4, rank=2)
    assert Projection.from_matrix(P).rank == 2


def test_dim_stays_in_range():
    rng = np.random.default_rng(2)
    assert {InstanceGenerator.dim(rng, 1) for _ in range(20)} == {2}
    assert all(2 <= InstanceGenerator.dim(rng, 40, cap=5) <= 5 for _ in range(50))


# ----- suites -----

def test_outcome_reports_worst_excess():
    result = outcome({"a": -1.0, "b": 0.5, "c": 0.1})
    assert not result.ok
    assert result.violation == 0.5
    assert result.detail == "b, c"
    assert outcome({"a": -1.0}).ok


def test_suite_registry():
    assert [s.name for s in SUITES] == [
        "spectral-family", "meet", "identities", "glb", "separativity", "equalizers",
        "ee", "gap", "pullbacks", "pushforward", "centred", "calkin",
    ]
    assert SUITES_BY_NAME["calkin"].fixed_count


@pytest.mark.parametrize("suite", [s for s in SUITES if s.name != "calkin"], ids=lambda s: s.name)
def test_generated_instances_pass(suite):
    generator = InstanceGenerator(12345)
    index = SUITES.index(suite)
    for i in range(3):
        instance = json.loads(ser.dumps(suite.generate(generator.rng(index, i), 6, i)))
        result = VerificationService.run_check(suite, instance, DEFAULT_TOLERANCES)
        assert result.ok, f"{suite.name}[{i}]: {result.detail}"


@pytest.mark.parametrize("family", ["badpq", "pomega"])
def test_calkin_suite_passes(family):
    suite = SUITES_BY_NAME["calkin"]
    result = VerificationService.run_check(suite, {"family": family, "N": 200}, DEFAULT_TOLERANCES)
    assert result.ok, result.detail


def test_unknown_suite_is_rejected():
    with pytest.raises(ArgumentError):
        VerificationService.select_suites(["meet", "bogus"])


def test_broken_instance_counts_as_violation():
    result = VerificationService.replay("meet", {"projections": [{"dim": 2, "entries": [1, 0, 0, 0.5]}]},
                                        DEFAULT_TOLERANCES)
    assert not result.ok
    assert result.violation == float("inf")
    assert "NumericInputError" in result.detail


def test_verify_is_deterministic():
    def run():
        report = asyncio.run(VerificationService.verify(
            seed=99, cfg=DEFAULT_TOLERANCES, max_dim=5, count=3, suites=["meet", "identities"], workers=2,
        ))
        return VerificationService.report_view(report)

    first, second = run(), run()
    assert first == second
    assert first["passed"]
    assert first["generator"] == GENERATOR_VERSION
    assert [s["instances"] for s in first["suites"]] == [3, 3]
