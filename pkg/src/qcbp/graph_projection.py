"""Projection onto the graph G = {(x, z) : A x = z}.

The solver path factorizes AA^T + I once (`build`) and reuses the cached
Cholesky factor for every projection. The tall elimination form and a
full KKT solve are kept as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg


@dataclass(frozen=True)
class GraphProjector:
    """Cached quantities for repeated graph projections with a fixed A.

    Immutable after build; `factor_count` is 1 for the lifetime of the
    object since project calls never refactorize.
    """

    A: np.ndarray
    gram: np.ndarray          # A A^T, m-by-m
    gram_plus_I: np.ndarray   # A A^T + I, the factorized matrix
    factor: np.ndarray        # lower-triangular Cholesky factor
    factor_count: int = field(default=1)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def d(self) -> int:
        return self.A.shape[1]


def build(A) -> GraphProjector:
    """Form A A^T and factorize A A^T + I, each exactly once.

    Cost is O(d m^2 + m^3); every subsequent `project` is O(m d + m^2).
    """
    A = linalg.as_matrix(A)
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"A must be nonempty, got shape {A.shape}")
    G = linalg.gram(A)
    GpI = G + np.eye(A.shape[0])
    L = linalg.cholesky(GpI)
    return GraphProjector(A=A, gram=G, gram_plus_I=GpI, factor=L)


def project(p: GraphProjector, x: np.ndarray, z: np.ndarray):
    """Nearest point (x', z') on the graph {A x' = z'} to (x, z).

    Uses the m-by-m elimination: z' solves (AA^T + I) z' = AA^T z + A x
    via the cached factor, then x' = A^T (z - z') + x.
    """
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if x.shape != (p.d,) or z.shape != (p.m,):
        raise ValueError(
            f"project dimension mismatch: A is {p.A.shape}, "
            f"x {x.shape}, z {z.shape}"
        )
    rhs = p.gram @ z + p.A @ x
    z_new = linalg.solve_cholesky(p.factor, rhs)
    x_new = p.A.T @ (z - z_new) + x
    return x_new, z_new


def project_tall(A, x, z):
    """Same projection computed through the d-by-d system.

    x' = (A^T A + I)^{-1} (x + A^T z), z' = A x'. Less efficient than
    `project` when m < d; kept for cross-validation.
    """
    A = linalg.as_matrix(A)
    x = linalg.as_vector(x, A.shape[1], "x")
    z = linalg.as_vector(z, A.shape[0], "z")
    M = A.T @ A + np.eye(A.shape[1])
    L = linalg.cholesky(M)
    x_new = linalg.solve_cholesky(L, x + A.T @ z)
    z_new = A @ x_new
    return x_new, z_new


def project_kkt_oracle(A, x, z):
    """Graph projection via the full (m+d) KKT linear system.

    Solves [[A, -I], [I, A^T]] [x'; z'] = [0; A^T z + x] with generic
    partially pivoted Gaussian elimination. Test oracle only; never used
    on the solver hot path.
    """
    A = linalg.as_matrix(A)
    m, d = A.shape
    x = linalg.as_vector(x, d, "x")
    z = linalg.as_vector(z, m, "z")
    K = np.zeros((m + d, m + d))
    K[:m, :d] = A
    K[:m, d:] = -np.eye(m)
    K[m:, :d] = np.eye(d)
    K[m:, d:] = A.T
    rhs = np.concatenate([np.zeros(m), A.T @ z + x])
    sol = np.linalg.solve(K, rhs)
    return sol[:d], sol[d:]
