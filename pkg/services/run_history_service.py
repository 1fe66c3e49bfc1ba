"""
Run History Service - сохранение прогонов verify и контрпримеров в БД.
"""

import json
import logging
from typing import List, Optional

from sqlalchemy import select
from sqlalchemy.orm import selectinload

from database.base_models import VerificationRun
from database.database import get_session
from database.models import Counterexample, SuiteResult
from .serialization_service import SerializationService
from .verification_service import VerifyReport

logger = logging.getLogger(__name__)


class RunHistoryService:
    """Сервис истории прогонов."""

    @staticmethod
    async def record_run(report: VerifyReport, count: Optional[int] = None) -> int:
        """
        Сохраняет прогон, результаты наборов и все контрпримеры.

        Returns:
            ID сохранённого прогона
        """
        async with get_session() as session:
            run = VerificationRun(
                seed=str(report.seed),
                generator=report.generator,
                count=count,
                max_dim=report.max_dim,
                tolerances_json=json.dumps(report.tolerances, sort_keys=True),
                passed=report.passed,
            )
            for suite in report.suites:
                run.suites.append(SuiteResult(
                    suite=suite.name,
                    invariant=suite.invariant,
                    instances=suite.instances,
                    failures=suite.failures,
                    max_violation=suite.max_violation,
                ))
                for failed in suite.counterexamples:
                    run.counterexamples.append(Counterexample(
                        suite=suite.name,
                        instance_index=failed.index,
                        detail=failed.detail[:500],
                        instance_json=SerializationService.dumps(failed.instance),
                    ))
            session.add(run)
            await session.flush()
            run_id = run.id
        logger.info(f"✅ Stored verification run {run_id} ({len(report.suites)} suites)")
        return run_id

    @staticmethod
    async def list_runs(limit: int = 20) -> List[dict]:
        """
        Returns:
            Последние прогоны, новые первыми
        """
        async with get_session() as session:
            result = await session.execute(
                select(VerificationRun)
                .options(selectinload(VerificationRun.suites), selectinload(VerificationRun.counterexamples))
                .order_by(VerificationRun.id.desc())
                .limit(limit)
            )
            runs = result.scalars().all()
            return [
                {
                    "id": run.id,
                    "seed": int(run.seed),
                    "generator": run.generator,
                    "passed": run.passed,
                    "started_at": run.started_at.isoformat(timespec="seconds"),
                    "failures": {s.suite: s.failures for s in run.suites if s.failures},
                    "counterexample_ids": [c.id for c in run.counterexamples],
                }
                for run in runs
            ]

    @staticmethod
    async def get_counterexample(counterexample_id: int) -> Optional[dict]:
        """
        Returns:
            {"suite", "instance", "tolerances"} или None, если запись не найдена
        """
        async with get_session() as session:
            result = await session.execute(
                select(Counterexample)
                .options(selectinload(Counterexample.run))
                .where(Counterexample.id == counterexample_id)
            )
            row = result.scalar_one_or_none()
            if row is None:
                return None
            return {
                "suite": row.suite,
                "instance": json.loads(row.instance_json),
                "tolerances": json.loads(row.run.tolerances_json),
            }
