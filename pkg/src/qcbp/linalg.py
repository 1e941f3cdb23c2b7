"""Dense linear-algebra kernels used by the solver.

Matrices are 2-D float64 numpy arrays in row-major (C) order; vectors are
1-D float64 arrays. All operations are pure functions over immutable
inputs and deterministic: identical inputs give identical outputs.

Every Cholesky factorization performed through this module increments a
process-wide counter so tests can assert the factorize-once contract.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

_factorization_count = 0


def factorization_count() -> int:
    """Total Cholesky factorizations performed through this module."""
    return _factorization_count


def as_matrix(A) -> np.ndarray:
    """Coerce to a finite 2-D float64 array, raising ValueError otherwise."""
    M = np.asarray(A, dtype=np.float64)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={M.ndim}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def as_vector(v, length: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float64 array of the given length."""
    w = np.asarray(v, dtype=np.float64)
    if w.ndim != 1:
        raise ValueError(f"{name}: expected a 1-D vector, got ndim={w.ndim}")
    if length is not None and w.shape[0] != length:
        raise ValueError(f"{name}: expected length {length}, got {w.shape[0]}")
    if not np.all(np.isfinite(w)):
        raise ValueError(f"{name}: entries must be finite")
    return w


def matvec(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Return A @ v, checking that len(v) == A.shape[1]."""
    if v.shape[0] != A.shape[1]:
        raise ValueError(
            f"matvec dimension mismatch: A is {A.shape}, v has length {v.shape[0]}"
        )
    return A @ v


def matvec_transpose(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Return A.T @ v, checking that len(v) == A.shape[0]."""
    if v.shape[0] != A.shape[0]:
        raise ValueError(
            f"matvec_transpose dimension mismatch: A is {A.shape}, "
            f"v has length {v.shape[0]}"
        )
    return A.T @ v


def gram(A: np.ndarray) -> np.ndarray:
    """Return the m-by-m Gram matrix A @ A.T, exactly symmetric.

    The upper triangle is computed and mirrored so the result equals its
    transpose bit-for-bit.
    """
    G = A @ A.T
    upper = np.triu(G)
    return upper + np.triu(G, 1).T


def cholesky(M: np.ndarray) -> np.ndarray:
    """Lower-triangular Cholesky factor L with L @ L.T == M.

    M must be symmetric positive definite; a non-positive pivot raises
    ValueError("not positive definite").
    """
    global _factorization_count
    try:
        L = np.linalg.cholesky(M)
    except np.linalg.LinAlgError as exc:
        raise ValueError("not positive definite") from exc
    _factorization_count += 1
    return L


def solve_cholesky(L: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve (L @ L.T) w = b by forward then backward substitution."""
    if b.shape[0] != L.shape[0]:
        raise ValueError(
            f"solve_cholesky dimension mismatch: L is {L.shape}, "
            f"b has length {b.shape[0]}"
        )
    u = solve_triangular(L, b, lower=True, check_finite=False)
    return solve_triangular(L.T, u, lower=False, check_finite=False)
