"""
Power Cover - exact, parameterized and approximate solvers for Power Vertex Cover.

This package solves Power Vertex Cover and its directed variant with
brute-force oracles, branch-and-reduce, a support kernel, tree-decomposition
dynamic programming, an approximation scheme and an exact linear relaxation.
"""

from power_cover.core.instance import (
    DpvcInstance,
    Edge,
    InstanceFormatError,
    PowerAssignment,
    format_instance,
    format_solution,
    is_feasible,
    parse_instance,
    parse_solution,
)
from power_cover.lp.rpvc import check_semi_integrality, lp_lower_bound, solve_rpvc
from power_cover.solvers.kernel import kernelize
from power_cover.solvers.optimize import minimize_power, minimize_support
from power_cover.solvers.oracle import brute_force_min_support, brute_force_opt
from power_cover.treewidth.approx import fptas_solve
from power_cover.treewidth.dp import solve_tw_exact
from power_cover.utils.config import Config

__version__ = "0.1.0"

__all__ = [
    "Config",
    "DpvcInstance",
    "Edge",
    "InstanceFormatError",
    "PowerAssignment",
    "brute_force_min_support",
    "brute_force_opt",
    "check_semi_integrality",
    "format_instance",
    "format_solution",
    "fptas_solve",
    "is_feasible",
    "kernelize",
    "lp_lower_bound",
    "minimize_power",
    "minimize_support",
    "parse_instance",
    "parse_solution",
    "solve_rpvc",
    "solve_tw_exact",
]
