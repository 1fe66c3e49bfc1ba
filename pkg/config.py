"""
Конфигурация инструментария (tolerances, schedule depth, storage).
"""

import os
from typing import Optional
from dotenv import load_dotenv

from modules.spectra import ToleranceConfig

# Загружаем переменные окружения из .env файла
load_dotenv()


def _float(name: str, default: float) -> float:
    raw = os.getenv(name, '')
    return float(raw) if raw.strip() else default


def _int(name: str, default: int) -> int:
    raw = os.getenv(name, '')
    return int(raw) if raw.strip() else default


class Config:
    """Класс конфигурации приложения."""

    # Численные допуски
    TOL_EIG_CLUSTER: float = _float('TOL_EIG_CLUSTER', 1e-9)
    TOL_RANK: float = _float('TOL_RANK', 1e-10)
    TOL_PSD: float = _float('TOL_PSD', 1e-10)
    TOL_ORDER: float = _float('TOL_ORDER', 1e-8)

    # Модель алгебры Калкина
    TOL_ESS: float = _float('TOL_ESS', 1e-6)
    ESS_CLUSTER: float = _float('ESS_CLUSTER', 1e-3)

    # Глубина расписания t_{m,n} и предел размерности
    SCHEDULE_DEPTH: int = _int('SCHEDULE_DEPTH', 16)
    MAX_DIM: int = _int('MAX_DIM', 16)

    # Хранилище прогонов verify (пусто = не сохранять)
    DATABASE_URL: str = os.getenv('DATABASE_URL', '')
    DEFAULT_DATABASE_URL: str = 'sqlite+aiosqlite:///./verification_runs.db'

    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'WARNING').upper()
    SUITE_WORKERS: int = _int('SUITE_WORKERS', 4)

    @classmethod
    def tolerances(cls, **overrides: Optional[float]) -> ToleranceConfig:
        """
        Собирает ToleranceConfig из окружения; непустые overrides
        (например, флаги --tol-eig / --tol-order) имеют приоритет.
        """
        values = {
            'eig_cluster': cls.TOL_EIG_CLUSTER,
            'rank_tol': cls.TOL_RANK,
            'psd_tol': cls.TOL_PSD,
            'order_tol': cls.TOL_ORDER,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ToleranceConfig(**values)

    @classmethod
    def validate(cls) -> None:
        """Проверяет критичные параметры конфигурации."""
        for name in ('TOL_EIG_CLUSTER', 'TOL_RANK', 'TOL_PSD', 'TOL_ORDER', 'TOL_ESS', 'ESS_CLUSTER'):
            if getattr(cls, name) <= 0:
                raise ValueError(f"{name} должен быть положительным")
        if cls.TOL_EIG_CLUSTER < cls.TOL_RANK:
            raise ValueError("TOL_EIG_CLUSTER не может быть меньше TOL_RANK")
        if not 1 <= cls.MAX_DIM <= 64:
            raise ValueError("MAX_DIM должен быть в диапазоне 1..64")
        if cls.SCHEDULE_DEPTH < 2:
            raise ValueError("SCHEDULE_DEPTH должен быть не меньше 2")
        if cls.SUITE_WORKERS < 1:
            raise ValueError("SUITE_WORKERS должен быть не меньше 1")
