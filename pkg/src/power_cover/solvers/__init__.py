"""
Exact solvers for power-cover: brute-force oracles and branch-and-reduce.
"""

from power_cover.solvers.algorithm1 import Algorithm1Solver, algorithm1_solve, rr1, solve_pvc_k
from power_cover.solvers.algorithm2 import Algorithm2Solver, algorithm2_solve
from power_cover.solvers.kernel import KernelOutcome, KernelStatus, kernelize
from power_cover.solvers.optimize import minimize_power, minimize_support
from power_cover.solvers.oracle import (
    DEFAULT_EDGE_LIMIT,
    OracleLimitError,
    OracleResult,
    brute_force_min_support,
    brute_force_opt,
    brute_force_opt_with_support,
    brute_force_vertex_cover,
)
from power_cover.solvers.outcome import SolveOutcome, SolveStats
from power_cover.solvers.rules import BranchPlan, br1, rr2, rr3, weight2_branch
from power_cover.solvers.support import HybridSupportSolver, hybrid_k_solve, solve_dpvc_k
from power_cover.solvers.vertex_cover import vc_subsolve, vertex_cover_decide

__all__ = [
    "DEFAULT_EDGE_LIMIT",
    "Algorithm1Solver",
    "Algorithm2Solver",
    "BranchPlan",
    "HybridSupportSolver",
    "KernelOutcome",
    "KernelStatus",
    "OracleLimitError",
    "OracleResult",
    "SolveOutcome",
    "SolveStats",
    "algorithm1_solve",
    "algorithm2_solve",
    "br1",
    "brute_force_min_support",
    "brute_force_opt",
    "brute_force_opt_with_support",
    "brute_force_vertex_cover",
    "hybrid_k_solve",
    "kernelize",
    "minimize_power",
    "minimize_support",
    "rr1",
    "rr2",
    "rr3",
    "solve_dpvc_k",
    "solve_pvc_k",
    "vc_subsolve",
    "vertex_cover_decide",
    "weight2_branch",
]
