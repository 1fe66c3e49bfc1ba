"""
Base models for verification run storage.
"""

from datetime import datetime
from typing import Optional, TYPE_CHECKING
from sqlalchemy import Integer, String, DateTime, Boolean, Text
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column, relationship

if TYPE_CHECKING:
    from .models import SuiteResult, Counterexample


class Base(DeclarativeBase):
    """Base class for all models."""
    pass


class VerificationRun(Base):
    """
    One `verify` invocation: seed, generator version, tolerances and outcome.
    """
    __tablename__ = "verification_runs"

    id: Mapped[int] = mapped_column(Integer, primary_key=True)
    # decimal text: unsigned 64-bit seeds overflow a signed BIGINT
    seed: Mapped[str] = mapped_column(String(20), nullable=False, index=True)
    generator: Mapped[str] = mapped_column(String(50), nullable=False)
    count: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)  # None = suite defaults
    max_dim: Mapped[int] = mapped_column(Integer, nullable=False)
    tolerances_json: Mapped[str] = mapped_column(Text, nullable=False)
    passed: Mapped[bool] = mapped_column(Boolean, nullable=False, default=False)
    started_at: Mapped[datetime] = mapped_column(DateTime, default=datetime.utcnow)

    suites: Mapped[list["SuiteResult"]] = relationship(
        "SuiteResult",
        back_populates="run",
        cascade="all, delete-orphan"
    )
    counterexamples: Mapped[list["Counterexample"]] = relationship(
        "Counterexample",
        back_populates="run",
        cascade="all, delete-orphan"
    )

    def __repr__(self) -> str:
        return f"<VerificationRun(id={self.id}, seed={self.seed}, passed={self.passed})>"
