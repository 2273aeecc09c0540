"""
Branch-and-reduce solver for directed instances under a total-power budget.
"""

import logging
from typing import Optional, Tuple

from power_cover.core.instance import DpvcInstance
from power_cover.core.state import BranchState, BudgetMode
from power_cover.solvers.base import BranchingSolver
from power_cover.solvers.outcome import SolveOutcome
from power_cover.solvers.rules import (
    BranchPlan,
    br1,
    br1_vertex,
    generic_branch,
    rr2,
    rr3,
    weight2_branch,
)

logger = logging.getLogger(__name__)


def _heavy_edge(s: BranchState) -> Optional[Tuple[int, int, int, int]]:
    """First edge with demand sum ≥ 6 or demands {2, 3}."""
    for u, v, w_uv, w_vu in s.edges():
        if w_uv + w_vu >= 6 or {w_uv, w_vu} == {2, 3}:
            return u, v, w_uv, w_vu
    return None


def _weight3_plan(s: BranchState) -> Optional[BranchPlan]:
    """Branching for a vertex ``u`` with an edge of demand 3 on its side."""
    for u in sorted(s.live):
        heavy = [v for v in s.neighbors(u) if s.weight(u, v) == 3]
        if not heavy:
            continue
        v = heavy[0]
        if s.max_demand_of(u) != 3 or s.pressure(u) != 4 or s.weight(v, u) != 1:
            return generic_branch(u)
        far = s.second_neighborhood(u)
        if len(far) == 1:
            (t,) = far
            shared = [z for z in s.neighbors(u) if z in s.residual[t]]
            if all(s.weight(t, z) == 1 for z in shared):
                return BranchPlan(
                    "step5_single_far",
                    [[("adjust", t, 1), ("solve", u, 0)], [("set", t, 0)]],
                )
        spread = [("set", u, 3)] + [("set", z, 0) for z in s.neighbors(u)]
        return BranchPlan("step5_spread", [[("adjust", v, 1)], spread])
    return None


def _unit_plan(s: BranchState) -> BranchPlan:
    top = max(s.degree(u) for u in s.live)
    u = min(x for x in s.live if s.degree(x) == top)
    return BranchPlan("unit_weight", [[("set", u, 0)], [("set", u, 1)]])


class Algorithm2Solver(BranchingSolver):
    """Reduce with RR2/RR3, then branch by BR1, heavy edges, weight-3 and weight-2 cases."""

    name = "algorithm2"

    def __init__(self, inst: DpvcInstance, budget: int):
        super().__init__(inst, budget, BudgetMode.POWER)

    def _reduce(self) -> None:
        s = self.state
        while True:
            if rr2(s):
                self.stats.count("rr2")
            elif rr3(s):
                self.stats.count("rr3")
            else:
                return

    def plan(self) -> Optional[BranchPlan]:
        """
        Branching for the current (reduced) state, or None when it is decided.

        Exposed so that each branching can be inspected on its own.
        """
        s = self.state
        if s.budget < 0 or not s.has_edges():
            return None
        if br1_vertex(s) is not None:
            return br1(s)
        heavy = _heavy_edge(s)
        if heavy is not None:
            u, v, w_uv, w_vu = heavy
            return BranchPlan("step4", [[("adjust", u, w_uv)], [("adjust", v, w_vu)]])
        top = s.max_weight()
        if top == 3:
            found = _weight3_plan(s)
            if found is not None:
                return found
        if top == 2:
            return weight2_branch(s)
        if top == 1:
            return _unit_plan(s)
        u = min(x for x in s.live if s.max_demand_of(x) == top)
        return generic_branch(u)

    def _search(self) -> bool:
        s = self.state
        self.stats.nodes += 1
        self._reduce()
        if s.budget < 0:
            return self._leaf(False)
        if not s.has_edges():
            return self._leaf(True)
        step = self.plan()
        assert step is not None
        return self._branch(step.branches, step.label)


def algorithm2_solve(inst: DpvcInstance, P: int) -> SolveOutcome:
    """
    Decide whether a DPVC instance has a cover of total power at most ``P``.

    Args:
        inst: Any instance, symmetric or not
        P: Total power budget

    Returns:
        Decision outcome with witness on YES
    """
    return Algorithm2Solver(inst, P).solve()
