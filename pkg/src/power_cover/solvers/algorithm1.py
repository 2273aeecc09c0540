"""
Branch-and-reduce solver for symmetric (PVC) instances.

Budget is either the total power or, for :func:`solve_pvc_k`, the support.
"""

import logging
from typing import Dict, Optional, Set, Tuple

from power_cover.core.instance import DpvcInstance
from power_cover.core.state import BranchState, BudgetMode
from power_cover.solvers.base import BranchingSolver
from power_cover.solvers.outcome import SolveOutcome
from power_cover.solvers.vertex_cover import vertex_cover_decide

logger = logging.getLogger(__name__)


def rr1(s: BranchState) -> bool:
    """
    Lower a locally strict maximum edge to the largest weight around it.

    An edge (u, v) of weight M whose other incident edges (at u or at v) all
    weigh at most B < M becomes an edge of weight B; power mode spends M - B.
    Edges with no other incident edge are left alone.

    Returns:
        True if the rule fired
    """
    for u, v, w_uv, _ in s.edges():
        others = [w for z, w in s.residual[u].items() if z != v]
        others += [w for z, w in s.residual[v].items() if z != u]
        if not others:
            continue
        bound = max(others)
        if w_uv > bound:
            consumed = w_uv - bound if s.mode is BudgetMode.POWER else 0
            s.reweight(u, v, bound, bound, consumed)
            logger.debug(f"RR1 on ({u}, {v}): {w_uv} -> {bound}")
            return True
    return False


def _absorb_marked(s: BranchState) -> int:
    """Support mode: a marked vertex may raise its power for free to clear its edges."""
    applied = 0
    for u in sorted(s.marked & s.live):
        if s.degree(u):
            s.adjust(u, s.max_demand_of(u))
            applied += 1
    return applied


def _max_weight_pair(s: BranchState) -> Tuple[int, int, Optional[int], int]:
    """
    Pick the lowest maximum-weight edge and a same-weight edge sharing an endpoint.

    Returns:
        (shared endpoint u, other endpoint v, third vertex v' or None, weight)
    """
    top = s.max_weight()
    for a, b, w, _ in s.edges():
        if w != top:
            continue
        for u, v in ((a, b), (b, a)):
            for z in s.neighbors(u):
                if z != v and s.weight(u, z) == top:
                    return u, v, z, top
    for a, b, w, _ in s.edges():
        if w == top:
            return a, b, None, top
    raise RuntimeError("no edge of maximum weight")


class Algorithm1Solver(BranchingSolver):
    """Reduce with RR1, delegate unit weights to vertex cover, branch on two heavy edges."""

    name = "algorithm1"

    def __init__(
        self,
        inst: DpvcInstance,
        budget: int,
        mode: BudgetMode = BudgetMode.POWER,
        marked: Optional[Set[int]] = None,
    ):
        if not inst.symmetric:
            raise ValueError("algorithm1 needs a symmetric (PVC) instance")
        super().__init__(inst, budget, mode, marked)

    def _search(self) -> bool:
        s = self.state
        self.stats.nodes += 1
        if s.mode is BudgetMode.SUPPORT:
            absorbed = _absorb_marked(s)
            if absorbed:
                self.stats.count("absorb_marked", absorbed)
        while rr1(s):
            self.stats.count("rr1")

        if not s.within_budget():
            return self._leaf(False)
        if not s.has_edges():
            return self._leaf(True)

        if s.max_weight() == 1:
            return self._leaf(self._cover_unit_weights())

        u, v, third, top = _max_weight_pair(s)
        if third is None:
            return self._branch([[("set", u, top)], [("set", v, top)]], "branch_edge")
        return self._branch(
            [[("set", u, top)], [("set", v, top), ("set", third, top)]],
            "branch_heavy_pair",
        )

    def _cover_unit_weights(self) -> bool:
        s = self.state
        graph: Dict[int, Set[int]] = {u: set(s.residual[u]) for u in s.live if s.residual[u]}
        budget = s.budget - s.pending_support() if s.mode is BudgetMode.SUPPORT else s.budget
        self.stats.count("vertex_cover")
        cover = vertex_cover_decide(graph, budget, self.stats)
        if cover is None:
            return False
        for v in sorted(cover):
            s.adjust(v, 1)
        return True


def algorithm1_solve(inst: DpvcInstance, P: int) -> SolveOutcome:
    """
    Decide whether a PVC instance has a cover of total power at most ``P``.

    Raises:
        ValueError: If the instance is not symmetric
    """
    return Algorithm1Solver(inst, P, BudgetMode.POWER).solve()


def solve_pvc_k(inst: DpvcInstance, k: int) -> SolveOutcome:
    """Decide whether a PVC instance has a cover using at most ``k`` powered vertices."""
    return Algorithm1Solver(inst, k, BudgetMode.SUPPORT).solve()
