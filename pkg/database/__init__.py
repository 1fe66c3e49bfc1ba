"""
Database models for stored verification runs.
"""

from .base_models import Base, VerificationRun
from .models import SuiteResult, Counterexample

__all__ = ['Base', 'VerificationRun', 'SuiteResult', 'Counterexample']
