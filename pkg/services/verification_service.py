"""
Verification Service - прогон наборов свойств по seed.

Instances of a suite are checked concurrently in worker threads; the report
is ordered by instance index, so it never depends on completion order.
"""

import asyncio
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from modules.errors import ArgumentError, ProjectionToolkitError
from modules.spectra import ToleranceConfig
from .instance_generator import GENERATOR_VERSION, InstanceGenerator
from .verification_suites import SUITES, SUITES_BY_NAME, CheckOutcome, Suite

logger = logging.getLogger(__name__)

# Counterexamples echoed per suite in the report; all of them are stored.
MAX_REPORTED = 3


@dataclass(frozen=True)
class FailedInstance:
    index: int
    detail: str
    violation: float
    instance: dict


@dataclass
class SuiteReport:
    name: str
    invariant: str
    instances: int
    failures: int = 0
    max_violation: float = 0.0
    counterexamples: List[FailedInstance] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class VerifyReport:
    generator: str
    seed: int
    max_dim: int
    tolerances: Dict[str, float]
    suites: List[SuiteReport]
    passed: bool


class VerificationService:
    """Сервис запуска проверок свойств."""

    @staticmethod
    def select_suites(names: Optional[Sequence[str]] = None) -> List[Suite]:
        """
        Returns:
            Наборы в порядке реестра (индекс набора задаёт его случайный поток)
        """
        if not names:
            return list(SUITES)
        unknown = [n for n in names if n not in SUITES_BY_NAME]
        if unknown:
            raise ArgumentError(f"unknown suites {unknown}; available: {[s.name for s in SUITES]}")
        return [s for s in SUITES if s.name in set(names)]

    @staticmethod
    def run_check(suite: Suite, instance: dict, cfg: ToleranceConfig) -> CheckOutcome:
        """Один экземпляр; ошибки инструментария засчитываются как нарушение."""
        try:
            return suite.check(instance, cfg)
        except ProjectionToolkitError as e:
            return CheckOutcome(ok=False, violation=float("inf"), detail=f"{type(e).__name__}: {e}")
        except Exception as e:
            logger.error(f"❌ {suite.name}: unexpected error in check: {e}", exc_info=True)
            return CheckOutcome(ok=False, violation=float("inf"), detail=f"{type(e).__name__}: {e}")

    @staticmethod
    async def run_suite(suite: Suite, generator: InstanceGenerator, count: Optional[int],
                        max_dim: int, cfg: ToleranceConfig, semaphore: asyncio.Semaphore) -> SuiteReport:
        suite_index = SUITES.index(suite)
        n = suite.default_count if count is None or suite.fixed_count else count
        instances = [suite.generate(generator.rng(suite_index, i), max_dim, i) for i in range(n)]

        async def bounded(instance: dict) -> CheckOutcome:
            async with semaphore:
                return await asyncio.to_thread(VerificationService.run_check, suite, instance, cfg)

        started = time.perf_counter()
        outcomes = await asyncio.gather(*(bounded(x) for x in instances))
        logger.info(f"⏱ {suite.name}: {n} instances in {time.perf_counter() - started:.2f}s")

        report = SuiteReport(name=suite.name, invariant=suite.invariant, instances=n)
        for i, (instance, result) in enumerate(zip(instances, outcomes)):
            report.max_violation = max(report.max_violation, result.violation)
            if not result.ok:
                report.failures += 1
                report.counterexamples.append(FailedInstance(i, result.detail, result.violation, instance))
        if report.passed:
            logger.info(f"✅ {suite.name}: all {n} instances hold")
        else:
            logger.warning(f"❌ {suite.name}: {report.failures}/{n} instances violate '{suite.invariant}'")
        return report

    @staticmethod
    async def verify(seed: int, cfg: ToleranceConfig, max_dim: int, count: Optional[int] = None,
                     suites: Optional[Sequence[str]] = None, workers: int = 4) -> VerifyReport:
        """
        Прогоняет выбранные наборы.

        Args:
            seed: 64-битный seed генератора
            count: число экземпляров на набор (None = значения по умолчанию)
            workers: число одновременно проверяемых экземпляров
        """
        generator = InstanceGenerator(seed)
        selected = VerificationService.select_suites(suites)
        logger.info(f"🚀 verify: seed={seed}, suites={[s.name for s in selected]}, generator={GENERATOR_VERSION}")
        semaphore = asyncio.Semaphore(max(1, workers))
        reports = []
        for suite in selected:
            logger.info(f"🔄 running suite {suite.name}")
            reports.append(await VerificationService.run_suite(suite, generator, count, max_dim, cfg, semaphore))
        return VerifyReport(
            generator=GENERATOR_VERSION,
            seed=seed,
            max_dim=max_dim,
            tolerances=cfg.to_dict(),
            suites=reports,
            passed=all(r.passed for r in reports),
        )

    @staticmethod
    def replay(suite_name: str, instance: dict, cfg: ToleranceConfig) -> CheckOutcome:
        """Повторная проверка сохранённого экземпляра."""
        suite = VerificationService.select_suites([suite_name])[0]
        return VerificationService.run_check(suite, instance, cfg)

    @staticmethod
    def report_view(report: VerifyReport) -> dict:
        """Отчёт для вывода: не более MAX_REPORTED контрпримеров на набор."""
        return {
            "generator": report.generator,
            "seed": report.seed,
            "max_dim": report.max_dim,
            "tolerances": report.tolerances,
            "passed": report.passed,
            "suites": [
                {
                    "name": s.name,
                    "invariant": s.invariant,
                    "instances": s.instances,
                    "failures": s.failures,
                    "max_violation": s.max_violation,
                    "counterexamples": s.counterexamples[:MAX_REPORTED],
                }
                for s in report.suites
            ],
        }
