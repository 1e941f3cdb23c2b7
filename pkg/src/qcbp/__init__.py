"""qcbp: ADMM solver for quadratically constrained basis pursuit.

Solves  minimize ||x||_1  subject to  ||y - A x||_2 <= eta  by operator
splitting onto the graph {(x, z) : A x = z}, with a single Cholesky
factorization of AA^T + I shared by all iterations and termination
certified by primal/dual residuals plus the duality gap.
"""

from .duality import Certificates, dual_objective, duality_gap
from .graph_projection import GraphProjector, build, project
from .instance import GeneratorParams, ProblemInstance, generate, validate
from .proximal import ball_project, soft_threshold
from .solver import (
    IterationRecord,
    PrimalDualState,
    SolveReport,
    SolveStatus,
    SolverConfig,
    default_rho,
    solve,
)

__all__ = [
    "Certificates",
    "GeneratorParams",
    "GraphProjector",
    "IterationRecord",
    "PrimalDualState",
    "ProblemInstance",
    "SolveReport",
    "SolveStatus",
    "SolverConfig",
    "ball_project",
    "build",
    "default_rho",
    "dual_objective",
    "duality_gap",
    "generate",
    "project",
    "soft_threshold",
    "solve",
    "validate",
]

__version__ = "0.1.0"
