"""
Instance generators for power-cover.
"""

from power_cover.generators.gadgets import (
    McisInstance,
    VcInstance,
    gen_clique_reduction,
    gen_lp_gap,
    gen_tw_hardness,
    gen_zero_vertex,
    tw_hardness_target,
)
from power_cover.generators.random_graphs import gen_random, gen_random_vc_graph

__all__ = [
    "McisInstance",
    "VcInstance",
    "gen_clique_reduction",
    "gen_lp_gap",
    "gen_random",
    "gen_random_vc_graph",
    "gen_tw_hardness",
    "gen_zero_vertex",
    "tw_hardness_target",
]
