"""
SQLAlchemy models for per-suite results and stored counterexamples.
"""

from datetime import datetime
from typing import Optional, TYPE_CHECKING
from sqlalchemy import Integer, String, ForeignKey, DateTime, Float, Text
from sqlalchemy.orm import Mapped, mapped_column, relationship

# Use Base from base_models to ensure all models are in the same metadata
from .base_models import Base

if TYPE_CHECKING:
    from .base_models import VerificationRun


class SuiteResult(Base):
    """Outcome of one suite inside a run."""
    __tablename__ = "suite_results"

    id: Mapped[int] = mapped_column(Integer, primary_key=True)
    run_id: Mapped[int] = mapped_column(Integer, ForeignKey("verification_runs.id"), nullable=False, index=True)
    suite: Mapped[str] = mapped_column(String(100), nullable=False)
    invariant: Mapped[str] = mapped_column(String(255), nullable=False)
    instances: Mapped[int] = mapped_column(Integer, nullable=False)
    failures: Mapped[int] = mapped_column(Integer, nullable=False, default=0)
    max_violation: Mapped[float] = mapped_column(Float, nullable=False, default=0.0)

    run: Mapped["VerificationRun"] = relationship("VerificationRun", back_populates="suites")

    def __repr__(self) -> str:
        return f"<SuiteResult(suite='{self.suite}', instances={self.instances}, failures={self.failures})>"


class Counterexample(Base):
    """Serialized instance on which a suite check failed."""
    __tablename__ = "counterexamples"

    id: Mapped[int] = mapped_column(Integer, primary_key=True)
    run_id: Mapped[int] = mapped_column(Integer, ForeignKey("verification_runs.id"), nullable=False, index=True)
    suite: Mapped[str] = mapped_column(String(100), nullable=False, index=True)
    instance_index: Mapped[int] = mapped_column(Integer, nullable=False)
    detail: Mapped[Optional[str]] = mapped_column(String(500), nullable=True)
    instance_json: Mapped[str] = mapped_column(Text, nullable=False)
    created_at: Mapped[datetime] = mapped_column(DateTime, default=datetime.utcnow)

    run: Mapped["VerificationRun"] = relationship("VerificationRun", back_populates="counterexamples")

    def __repr__(self) -> str:
        return f"<Counterexample(id={self.id}, suite='{self.suite}', instance={self.instance_index})>"
