"""
Reduction and branching rules for directed instances under a total-power budget.
"""

import logging
from typing import List, NamedTuple, Optional

from power_cover.core.state import BranchState
from power_cover.solvers.base import Branch

logger = logging.getLogger(__name__)


class BranchPlan(NamedTuple):
    """Branches to explore in order; a single branch is a forced move."""

    label: str
    branches: List[Branch]


def rr2(s: BranchState) -> bool:
    """
    If P(u) ≤ M(u), the heaviest edge at ``u`` is covered from the other side.

    Applies Adjust(v, w_vu) for the lowest neighbor ``v`` with w_uv = M(u).
    """
    for u in sorted(s.live):
        if not s.degree(u):
            continue
        top = s.max_demand_of(u)
        if s.pressure(u) <= top:
            v = min(z for z, w in s.residual[u].items() if w == top)
            amount = s.weight(v, u)
            logger.debug(f"RR2 at {u}: Adjust({v}, {amount})")
            s.adjust(v, amount)
            return True
    return False


def rr3(s: BranchState) -> bool:
    """Turn an isolated-looking (2, 2) edge among unit demands into a (1, 1) edge for one unit."""
    for u, v, w_uv, w_vu in s.edges():
        if w_uv != 2 or w_vu != 2:
            continue
        if any(w != 1 for z, w in s.residual[u].items() if z != v):
            continue
        if any(w != 1 for z, w in s.residual[v].items() if z != u):
            continue
        logger.debug(f"RR3 on ({u}, {v})")
        s.reweight(u, v, 1, 1, 1)
        return True
    return False


def br1_vertex(s: BranchState) -> Optional[int]:
    """Lowest vertex with P(u) ≥ 5, if any."""
    for u in sorted(s.live):
        if s.degree(u) and s.pressure(u) >= 5:
            return u
    return None


def br1(s: BranchState) -> BranchPlan:
    """
    Branch Set(u, 0) | Adjust(u, 1) on a vertex with P(u) ≥ 5.

    Raises:
        ValueError: If no vertex has P(u) ≥ 5
    """
    u = br1_vertex(s)
    if u is None:
        raise ValueError("BR1 needs a vertex with P(u) >= 5")
    return BranchPlan("br1", [[("set", u, 0)], [("adjust", u, 1)]])


def generic_branch(u: int, label: str = "fallback") -> BranchPlan:
    """Exhaustive split p_u = 0 or p_u ≥ 1."""
    return BranchPlan(label, [[("set", u, 0)], [("adjust", u, 1)]])


def _low_or_high(u: int, label: str) -> BranchPlan:
    # p_u = 1 never beats moving that unit to the weight-1 neighbor
    return BranchPlan(label, [[("set", u, 0)], [("set", u, 2)]])


def _heavy_pair(s: BranchState, u: int, heavy: List[int], label: str) -> BranchPlan:
    """Two weight-2 neighbors of ``u`` with unit demands back towards ``u``."""
    if all(s.degree(x) == 1 for x in heavy):
        return BranchPlan(f"{label}_pendants", [[("set", u, 2)]])
    z = min(x for x in heavy if s.degree(x) >= 2)
    v = next(x for x in heavy if x != z)
    return BranchPlan(label, [[("set", z, 0)], [("adjust", z, 1), ("adjust", v, 1)]])


def _weight2_vertex(s: BranchState) -> int:
    best = -1
    for u in sorted(s.live):
        if s.max_demand_of(u) == 2 and (best < 0 or s.degree(u) > s.degree(best)):
            best = u
    return best


def _weight2_at(s: BranchState, u: int, depth: int) -> BranchPlan:
    if s.pressure(u) >= 5:
        return BranchPlan("br1", [[("set", u, 0)], [("adjust", u, 1)]])
    nbrs = s.neighbors(u)
    heavy = [z for z in nbrs if s.weight(u, z) == 2]
    light = [z for z in nbrs if s.weight(u, z) == 1]
    degree = len(nbrs)

    if not light:
        return _low_or_high(u, "w2_all_heavy")

    if degree == 4:
        if any(s.weight(z, u) != 1 for z in nbrs):
            return generic_branch(u)
        if len(light) == 1:
            return _low_or_high(u, "w2_d4_one_light")
        if len(light) == 3:
            return BranchPlan("w2_d4_three_light", [[("adjust", heavy[0], 1)]])
        return _heavy_pair(s, u, heavy, "w2_d4_two_heavy")

    if degree == 3:
        if len(heavy) == 2:
            t = light[0]
            if s.weight(t, u) == 1:
                return _low_or_high(u, "w2_d3_light_back")
            if any(s.weight(x, u) != 1 for x in heavy):
                return generic_branch(u)
            return _heavy_pair(s, u, heavy, "w2_d3_two_heavy")
        v = heavy[0]
        if s.weight(v, u) == 1:
            return BranchPlan("w2_d3_one_heavy", [[("adjust", v, 1)]])
        partners = [x for x in s.neighbors(v) if x != u and s.weight(v, x) == 2]
        if partners:
            w = partners[0]
            return BranchPlan(
                "w2_d3_heavy_chain",
                [[("set", v, 2)], [("adjust", u, 2), ("adjust", w, s.weight(w, v))]],
            )
        return generic_branch(u)

    if degree == 2:
        v, z = heavy[0], light[0]
        if s.weight(z, u) == 1:
            return _low_or_high(u, "w2_d2_light_back")
        if s.weight(v, u) == 1:
            return BranchPlan("w2_d2_heavy_back", [[("adjust", v, 1)]])
        if depth == 0 and s.max_demand_of(z) == 2:
            return _weight2_at(s, z, depth + 1)
        return generic_branch(u)

    return generic_branch(u)


def weight2_branch(s: BranchState) -> BranchPlan:
    """
    Case analysis when the maximum residual demand is 2.

    Picks a maximum-degree vertex ``u`` with M(u) = 2 and returns either a
    two-way branch or a single forced move. Configurations outside the case
    analysis fall back to Set(u, 0) | Adjust(u, 1).

    Raises:
        ValueError: If the maximum residual demand is not 2
    """
    if s.max_weight() != 2:
        raise ValueError(f"weight-2 branching needs maximum demand 2, got {s.max_weight()}")
    return _weight2_at(s, _weight2_vertex(s), 0)
