import asyncio

import pytest

from database.database import close_db, init_db, normalize_url
from modules.spectra import DEFAULT_TOLERANCES
from services.run_history_service import RunHistoryService
from services.verification_service import FailedInstance, SuiteReport, VerifyReport

INSTANCE = {"projections": [{"dim": 1, "entries": [[1.0, 0.0]]}]}


def _report(seed: int) -> VerifyReport:
    failing = SuiteReport(name="meet", invariant="meet_spectral equals the null-space meet", instances=2,
                          failures=1, max_violation=0.25,
                          counterexamples=[FailedInstance(1, "meet_spectral = meet_nullspace", 0.25, INSTANCE)])
    passing = SuiteReport(name="glb", invariant="glb", instances=2)
    return VerifyReport(generator="pcg64-seedseq-v1", seed=seed, max_dim=4,
                        tolerances=DEFAULT_TOLERANCES.to_dict(), suites=[failing, passing], passed=False)


@pytest.fixture
def db_url(tmp_path):
    return f"sqlite+aiosqlite:///{tmp_path / 'runs.db'}"


def test_normalize_url():
    assert normalize_url("postgres://u@h/db") == "postgresql+asyncpg://u@h/db"
    assert normalize_url("sqlite:///x.db") == "sqlite+aiosqlite:///x.db"
    assert normalize_url("sqlite+aiosqlite:///x.db") == "sqlite+aiosqlite:///x.db"


def test_runs_and_counterexamples_are_stored(db_url):
    seed = 2 ** 64 - 1

    async def scenario():
        await init_db(db_url)
        try:
            run_id = await RunHistoryService.record_run(_report(seed), count=2)
            runs = await RunHistoryService.list_runs()
            stored = await RunHistoryService.get_counterexample(runs[0]["counterexample_ids"][0])
            missing = await RunHistoryService.get_counterexample(10_000)
            return run_id, runs, stored, missing
        finally:
            await close_db()

    run_id, runs, stored, missing = asyncio.run(scenario())
    assert len(runs) == 1
    assert runs[0]["id"] == run_id
    assert runs[0]["seed"] == seed
    assert runs[0]["failures"] == {"meet": 1}
    assert not runs[0]["passed"]
    assert stored == {"suite": "meet", "instance": INSTANCE, "tolerances": DEFAULT_TOLERANCES.to_dict()}
    assert missing is None


def test_list_runs_is_newest_first(db_url):
    async def scenario():
        await init_db(db_url)
        try:
            for seed in (1, 2, 3):
                await RunHistoryService.record_run(_report(seed))
            return await RunHistoryService.list_runs(limit=2)
        finally:
            await close_db()

    assert [r["seed"] for r in asyncio.run(scenario())] == [3, 2]
