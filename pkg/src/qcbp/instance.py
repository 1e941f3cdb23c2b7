"""Problem container and synthetic instance generator.

An instance is the triple (A, y, eta) for

    minimize ||x||_1  subject to  ||y - A x||_2 <= eta,

with A an m-by-d matrix, m < d. Generated instances additionally carry
the planted sparse vector and the noise realization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg


@dataclass(frozen=True)
class ProblemInstance:
    A: np.ndarray
    y: np.ndarray
    eta: float
    ground_truth_x: np.ndarray | None = None
    noise: np.ndarray | None = None
    seed: int | None = None

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def d(self) -> int:
        return self.A.shape[1]


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for the synthetic benchmark family.

    k = round(p_s * d) entries of the planted vector are nonzero and
    m = round(p_m * d) measurements are taken (round-half-up). With
    `interior_slack` the noise norm is 0.99 * eta instead of exactly
    eta, so the planted point is strictly feasible.
    """

    d: int
    p_s: float
    p_m: float
    eta: float
    seed: int
    interior_slack: bool = False

    @property
    def m(self) -> int:
        return _round_half_up(self.p_m * self.d)

    @property
    def k(self) -> int:
        return _round_half_up(self.p_s * self.d)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def generate(params: GeneratorParams) -> ProblemInstance:
    """Draw a random instance, deterministic in params.seed.

    A and the nonzero entries of the planted x are i.i.d. standard
    normal; the support is uniform without replacement; the noise is
    standard normal rescaled to norm eta (or 0.99*eta with slack); and
    y = A x + noise.
    """
    d, m, k = params.d, params.m, params.k
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if not (0.0 < params.p_s <= 1.0):
        raise ValueError(f"p_s must be in (0, 1], got {params.p_s}")
    if not (0.0 < params.p_m < 1.0):
        raise ValueError(f"p_m must be in (0, 1), got {params.p_m}")
    if m < 1 or m >= d:
        raise ValueError(f"round(p_m*d) = {m} must satisfy 1 <= m < d = {d}")
    if params.eta <= 0:
        raise ValueError(f"eta must be positive, got {params.eta}")

    rng = np.random.default_rng(params.seed)
    x_true = np.zeros(d)
    support = rng.choice(d, size=k, replace=False)
    x_true[support] = rng.standard_normal(k)
    A = rng.standard_normal((m, d))
    v = rng.standard_normal(m)
    target = params.eta * (0.99 if params.interior_slack else 1.0)
    v *= target / np.linalg.norm(v)
    y = A @ x_true + v
    return ProblemInstance(
        A=A, y=y, eta=params.eta, ground_truth_x=x_true, noise=v,
        seed=params.seed,
    )


def validate(instance: ProblemInstance) -> list[str]:
    """Return a list of contract violations (empty when the instance is ok)."""
    problems: list[str] = []
    A = np.asarray(instance.A)
    y = np.asarray(instance.y)
    if A.ndim != 2:
        problems.append(f"A must be 2-D, got ndim={A.ndim}")
        return problems
    m, d = A.shape
    if m >= d:
        problems.append(f"A must have more columns than rows, got {m}x{d}")
    if y.ndim != 1 or y.shape[0] != m:
        problems.append(f"y must have length {m}, got shape {y.shape}")
    if not np.all(np.isfinite(A)):
        problems.append("A has non-finite entries")
    if not np.all(np.isfinite(y)):
        problems.append("y has non-finite entries")
    if not (instance.eta > 0):
        problems.append("eta must be positive")
    if instance.ground_truth_x is not None:
        gt = np.asarray(instance.ground_truth_x)
        if gt.shape != (d,):
            problems.append(f"ground_truth_x must have length {d}, got {gt.shape}")
    if instance.noise is not None:
        nz = np.asarray(instance.noise)
        if nz.shape != (m,):
            problems.append(f"noise must have length {m}, got {nz.shape}")
    return problems


def check(instance: ProblemInstance) -> ProblemInstance:
    """Validate and return the instance, raising on any violation."""
    problems = validate(instance)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    return instance


__all__ = ["ProblemInstance", "GeneratorParams", "generate", "validate", "check"]
