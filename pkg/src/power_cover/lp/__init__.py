"""
Exact linear relaxation for power-cover.
"""

from power_cover.lp.rpvc import LpSolution, check_semi_integrality, lp_lower_bound, solve_rpvc
from power_cover.lp.simplex import SimplexTableau

__all__ = [
    "LpSolution",
    "SimplexTableau",
    "check_semi_integrality",
    "lp_lower_bound",
    "solve_rpvc",
]
