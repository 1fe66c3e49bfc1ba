"""
Operator norms of dense matrices.
"""

import numpy as np
import scipy.linalg as la

from .subspaces import as_matrix


def operator_norm(T) -> float:
    """Largest singular value of T (0 for an empty matrix)."""
    arr = as_matrix(T)
    if arr.size == 0:
        return 0.0
    return float(la.norm(arr, 2))


def frobenius_distance(A, B) -> float:
    return float(np.linalg.norm(as_matrix(A) - as_matrix(B), "fro"))
