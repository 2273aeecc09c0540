"""
Tree-decomposition engine for power-cover: exact list DP and the approximation scheme.
"""

from power_cover.treewidth.approx import (
    RoundingScale,
    fptas_guess_and_force,
    fptas_lift,
    fptas_round_weights,
    fptas_solve,
    geometric_levels,
    round_up_to_levels,
    trim_powers,
)
from power_cover.treewidth.decomposition import (
    NiceTreeDecomposition,
    NodeKind,
    TdNode,
    format_pace_td,
    make_nice,
    min_fill_decomposition,
    read_pace_td,
    validate_decomposition,
)
from power_cover.treewidth.dp import (
    ListInstance,
    ListSolveResult,
    degree_levels,
    ldpvc_dp,
    maxweight_levels,
    solve_tw_degree,
    solve_tw_exact,
    solve_tw_maxweight,
    table_size,
)

__all__ = [
    "ListInstance",
    "ListSolveResult",
    "NiceTreeDecomposition",
    "NodeKind",
    "RoundingScale",
    "TdNode",
    "degree_levels",
    "format_pace_td",
    "fptas_guess_and_force",
    "fptas_lift",
    "fptas_round_weights",
    "fptas_solve",
    "geometric_levels",
    "ldpvc_dp",
    "make_nice",
    "maxweight_levels",
    "min_fill_decomposition",
    "read_pace_td",
    "round_up_to_levels",
    "solve_tw_degree",
    "solve_tw_exact",
    "solve_tw_maxweight",
    "table_size",
    "trim_powers",
    "validate_decomposition",
]
