"""
Solvers with a budget on the number of powered vertices (the support).
"""

import logging
from typing import Iterable, List, Optional, Set, Tuple

from power_cover.core.instance import DpvcInstance, PowerAssignment, is_feasible
from power_cover.core.state import BranchState, BudgetMode
from power_cover.solvers.base import Branch, BranchingSolver, solve_component
from power_cover.solvers.outcome import SolveOutcome, SolveStats

logger = logging.getLogger(__name__)


class SupportBranchingSolver(BranchingSolver):
    """
    Support-bounded search for directed instances.

    A vertex of degree above the remaining allowance must cover all but that
    many of its edges; otherwise an edge (u, v) with w_uv = M(u) is covered
    either by u at M(u) or by v at one of its own demand levels.
    """

    name = "support-branching"

    def __init__(self, inst: DpvcInstance, k: int, marked: Optional[Iterable[int]] = None):
        super().__init__(inst, k, BudgetMode.SUPPORT, marked)

    def _allowance(self) -> int:
        return self.state.budget - self.state.pending_support()

    def _reduce(self) -> bool:
        """Apply reductions to a fixpoint; False once the allowance is exceeded."""
        s = self.state
        while True:
            # already powered: covering every edge costs no support
            for u in sorted(s.marked & s.live):
                if s.degree(u):
                    s.adjust(u, s.max_demand_of(u))
                    self.stats.count("absorb_marked")
            for u in s.isolated():
                s.remove_isolated(u)
            allowance = self._allowance()
            if allowance < 0:
                return False
            crowded = [u for u in sorted(s.live) if s.degree(u) > allowance]
            if not crowded:
                return True
            u = crowded[0]
            demands = sorted(s.residual[u].values(), reverse=True)
            s.adjust(u, demands[allowance])
            self.stats.count("high_degree")

    def _search(self) -> bool:
        s = self.state
        self.stats.nodes += 1
        if not self._reduce():
            return self._leaf(False)
        if not s.has_edges():
            return self._leaf(True)

        u = min(x for x in s.live if s.degree(x))
        top = s.max_demand_of(u)
        v = min(z for z, w in s.residual[u].items() if w == top)
        floor = s.weight(v, u)
        levels = sorted({w for w in s.residual[v].values() if w >= floor})
        branches: List[Branch] = [[("set", u, top)]]
        branches += [[("set", v, w)] for w in levels]
        return self._branch(branches, "support_branch")


def solve_dpvc_k(
    inst: DpvcInstance, k: int, marked: Optional[Iterable[int]] = None
) -> SolveOutcome:
    """
    Decide whether ``inst`` has a cover with at most ``k`` powered vertices.

    Args:
        inst: Any instance
        k: Support budget
        marked: Vertices already powered (counted against ``k`` exactly once)

    Returns:
        Decision outcome with witness on YES
    """
    return SupportBranchingSolver(inst, k, marked).solve()


class HybridSupportSolver:
    """
    Support-bounded search that grows a cover set and finishes on small instances.

    ``I`` starts as the whole vertex set. The search branches until ``I`` is
    independent and carries no edges, or the cover set ``C1 ∪ C2`` reaches
    ``k``; each leaf then solves the instance left on the cover set exactly.
    Every leaf is visited, so the outcome also carries the least total power
    among covers of support at most ``k``.
    """

    name = "hybrid"

    def __init__(self, inst: DpvcInstance, k: int):
        self.inst = inst
        self.k = k
        self.state = BranchState(inst, 0, BudgetMode.POWER)
        self.stats = SolveStats()
        self.best: Optional[PowerAssignment] = None

    def _edges_to(self, u: int, group: Set[int]) -> List[Tuple[int, int]]:
        return [(z, w) for z, w in sorted(self.state.residual[u].items()) if z in group]

    def _inner_edge(self, indep: Set[int]) -> Optional[Tuple[int, int]]:
        for u in sorted(indep):
            for z in sorted(self.state.residual[u]):
                if z in indep and u < z:
                    return u, z
        return None

    def _explore(self, c1: Set[int], c2: Set[int], indep: Set[int]) -> None:
        s = self.state
        self.stats.nodes += 1
        for u in sorted(c1):
            if not self._edges_to(u, indep):
                c1 = c1 - {u}
                c2 = c2 | {u}

        touches = any(self._edges_to(u, indep) for u in c1) or self._inner_edge(indep)
        if len(c1 | c2) >= self.k or not touches:
            self._finish(c1, indep)
            return

        inner = self._inner_edge(indep)
        if inner is not None:
            self.stats.count("hybrid_inner_edge")
            for x, y in (inner, inner[::-1]):
                mark = s.checkpoint()
                s.adjust(x, s.weight(x, y))
                self._explore(c1 | {x}, c2, indep - {x})
                s.rollback(mark)
            return

        self.stats.count("hybrid_cover_edge")
        u = min(c1)
        links = self._edges_to(u, indep)
        top = max(w for _, w in links)
        v = min(z for z, w in links if w == top)

        mark = s.checkpoint()
        s.adjust(u, top)
        self._explore(c1, c2, indep)
        s.rollback(mark)

        mark = s.checkpoint()
        s.adjust(v, s.weight(v, u))
        self._explore(c1 | {v}, c2, indep - {v})
        s.rollback(mark)

    def _finish(self, c1: Set[int], indep: Set[int]) -> None:
        s = self.state
        self.stats.leaves += 1
        if self._inner_edge(indep) is not None:
            return
        mark = s.checkpoint()
        for u in sorted(c1):
            links = self._edges_to(u, indep)
            if links:
                s.adjust(u, max(w for _, w in links))
        for u in sorted(s.live):
            if s.degree(u):
                solve_component(s, u)
        witness = s.lift()
        s.rollback(mark)
        if witness.support > self.k:
            raise RuntimeError(f"hybrid leaf produced support {witness.support} > {self.k}")
        if self.best is None or witness.value < self.best.value:
            self.best = witness

    def solve(self) -> SolveOutcome:
        """
        Explore every leaf.

        Returns:
            Outcome whose ``opt_value`` is the least power with support ≤ k
        """
        if self.k >= 0:
            self._explore(set(), set(), set(range(self.inst.n)))
        logger.debug(
            f"{self.name}: k={self.k}, leaves={self.stats.leaves}, "
            f"best={self.best.value if self.best else None}"
        )
        if self.best is None:
            return SolveOutcome(answer=False, stats=self.stats)
        if not is_feasible(self.inst, self.best):
            raise RuntimeError(f"{self.name} produced an infeasible witness")
        return SolveOutcome(
            answer=True, opt_value=self.best.value, witness=self.best, stats=self.stats
        )


def hybrid_k_solve(inst: DpvcInstance, k: int) -> SolveOutcome:
    """Decide support ≤ ``k`` with the cover-set search; see :class:`HybridSupportSolver`."""
    return HybridSupportSolver(inst, k).solve()
