"""Independent test oracles.

Deliberately unoptimized re-derivations of the solver's building blocks:
1-D grid search for the l1 prox, random-candidate dominance for the ball
projection, and a literal per-step ADMM transcription that refactorizes
nothing and takes the long way around every product. Test-only.
"""

from __future__ import annotations

import numpy as np

from .instance import ProblemInstance
from .solver import PrimalDualState, SolverConfig, default_rho


def prox_g_oracle(v: float, kappa: float, grid_step: float = 1e-4) -> float:
    """Brute-force minimizer of |x| + (x - v)^2 / (2 kappa) on a grid."""
    if kappa <= 0 or grid_step <= 0:
        raise ValueError("kappa and grid_step must be positive")
    lo = v - 2.0 * kappa - 1.0
    hi = v + 2.0 * kappa + 1.0
    grid = np.arange(lo, hi + grid_step, grid_step)
    objective = np.abs(grid) + (grid - v) ** 2 / (2.0 * kappa)
    return float(grid[np.argmin(objective)])


def prox_f_oracle(
    v: np.ndarray,
    y: np.ndarray,
    eta: float,
    projection: np.ndarray,
    trials: int = 50,
    rng: np.random.Generator | None = None,
    tol: float = 1e-9,
) -> None:
    """Assert no random point of the ball beats the claimed projection.

    Samples `trials` points uniformly in {w : ||w - y|| <= eta} and
    raises AssertionError naming the first sample strictly closer to v
    than `projection` is.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if rng is None:
        rng = np.random.default_rng(0)
    m = y.shape[0]
    best = float(np.linalg.norm(projection - v))
    for t in range(trials):
        direction = rng.standard_normal(m)
        direction /= np.linalg.norm(direction)
        radius = eta * rng.uniform() ** (1.0 / m)
        w = y + radius * direction
        dist = float(np.linalg.norm(w - v))
        if dist < best - tol:
            raise AssertionError(
                f"sample {t} at distance {dist} beats projection at {best}"
            )


def scripted_iteration_oracle(
    instance: ProblemInstance, config: SolverConfig, steps: int
) -> PrimalDualState:
    """Run `steps` literal ADMM iterations with no cached factorization.

    Each projection forms AA^T + I from scratch, evaluates AA^T z as
    A (A^T z), and solves with a fresh general linear solve. Intended
    for small instances only (d <= 50).
    """
    A, y, eta = instance.A, instance.y, instance.eta
    m, d = A.shape
    rho = default_rho(instance) if config.rho is None else config.rho
    x = np.zeros(d)
    z = np.zeros(m)
    x_g = np.zeros(d)
    z_g = np.zeros(m)
    xt = np.zeros(d)
    zt = np.zeros(m)
    for _ in range(steps):
        # prox step, written out piecewise
        u = x_g - xt
        kappa = 1.0 / rho
        x = np.where(u > kappa, u - kappa, np.where(u < -kappa, u + kappa, 0.0))
        w = z_g - zt
        dist = np.linalg.norm(w - y)
        z = w.copy() if dist <= eta else y + (eta / dist) * (w - y)
        # graph projection from scratch
        cx = x + xt
        cz = z + zt
        M = A @ A.T + np.eye(m)
        z_g = np.linalg.solve(M, A @ (A.T @ cz) + A @ cx)
        x_g = A.T @ (cz - z_g) + cx
        # scaled dual update
        xt = xt + (x - x_g)
        zt = zt + (z - z_g)
    return PrimalDualState(x=x, z=z, x_g=x_g, z_g=z_g, xt=xt, zt=zt)
