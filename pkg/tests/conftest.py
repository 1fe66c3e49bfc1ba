import numpy as np
import pytest
from hypothesis import strategies as st

from modules.spectra import Projection
from services.instance_generator import InstanceGenerator


def line(theta: float) -> Projection:
    """Rank-one projection of C² onto (cos θ, sin θ)."""
    v = np.array([np.cos(theta), np.sin(theta)], dtype=complex)
    return Projection.from_matrix(np.outer(v, v.conj()))


def diag_projection(*entries) -> Projection:
    return Projection.from_matrix(np.diag(entries).astype(complex))


def random_projection(rng: np.random.Generator, n: int, rank: int = None) -> Projection:
    return Projection.from_matrix(InstanceGenerator.projection(rng, n, rank))


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=2, max_value=6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
