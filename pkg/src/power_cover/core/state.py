"""
Residual branching state and the Adjust/Set calculus for power-cover.
"""

import logging
from collections import deque
from enum import Enum
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Set, Tuple

from power_cover.core.instance import DpvcInstance, Edge, PowerAssignment

logger = logging.getLogger(__name__)


class BudgetMode(str, Enum):
    """What the branching budget counts."""

    POWER = "power"
    SUPPORT = "support"


class TraceEntry(NamedTuple):
    """
    One applied operation.

    ``op`` is ``adjust``, ``set``, ``remove`` or ``reweight``. Reweight entries
    carry the second endpoint ``v`` and the demand pairs before and after.
    """

    op: str
    u: int
    amount: int = 0
    v: int = -1
    old_uv: int = 0
    old_vu: int = 0
    new_uv: int = 0
    new_vu: int = 0


class BranchState:
    """
    Mutable residual instance with budget, forced powers, marks and an undo log.

    ``residual[u][z]`` is the current demand on u's side of the live edge (u, z).
    Every mutation is logged so that :meth:`rollback` restores an earlier
    :meth:`checkpoint` exactly.
    """

    def __init__(
        self,
        inst: DpvcInstance,
        budget: int,
        mode: BudgetMode = BudgetMode.POWER,
        marked: Optional[Iterable[int]] = None,
    ):
        """
        Initialize the state from an instance.

        Args:
            inst: Original instance
            budget: Remaining total power (power mode) or support (support mode)
            mode: Budget accounting mode
            marked: Vertices that already received positive power elsewhere
        """
        self.original = inst
        self.mode = mode
        self.budget = budget
        self.residual: Dict[int, Dict[int, int]] = {v: {} for v in range(inst.n)}
        for u, v, w_uv, w_vu in inst.edges:
            self.residual[u][v] = w_uv
            self.residual[v][u] = w_vu
        self.live: Set[int] = set(range(inst.n))
        self.forced: Dict[int, int] = {}
        self.marked: Set[int] = set(marked or ())
        self.trace: List[TraceEntry] = []
        self.consumed = 0
        self._undo: List[Tuple[Any, ...]] = []

    # -- undo log ---------------------------------------------------------

    def checkpoint(self) -> int:
        """Return a mark that :meth:`rollback` can restore."""
        return len(self._undo)

    def rollback(self, mark: int) -> None:
        """Undo every mutation made after ``mark``."""
        undo = self._undo
        while len(undo) > mark:
            record = undo.pop()
            kind = record[0]
            if kind == "d":
                _, u, z, old = record
                self.residual[u][z] = old
            elif kind == "e":
                _, u, z, w_uz, w_zu = record
                self.residual[u][z] = w_uz
                self.residual[z][u] = w_zu
            elif kind == "k":
                _, u = record
                self.live.add(u)
                self.residual[u] = {}
            elif kind == "f":
                _, u, old = record
                if old:
                    self.forced[u] = old
                else:
                    self.forced.pop(u, None)
            elif kind == "m":
                self.marked.discard(record[1])
            elif kind == "b":
                _, budget, consumed = record
                self.budget = budget
                self.consumed = consumed
            elif kind == "t":
                self.trace.pop()

    def _set_demand(self, u: int, z: int, value: int) -> None:
        self._undo.append(("d", u, z, self.residual[u][z]))
        self.residual[u][z] = value

    def _delete_edge(self, u: int, z: int) -> None:
        self._undo.append(("e", u, z, self.residual[u][z], self.residual[z][u]))
        del self.residual[u][z]
        del self.residual[z][u]

    def _kill(self, u: int) -> None:
        self._undo.append(("k", u))
        self.live.discard(u)
        del self.residual[u]

    def _force(self, u: int, w: int) -> None:
        old = self.forced.get(u, 0)
        self._undo.append(("f", u, old))
        self.forced[u] = old + w

    def _mark(self, u: int) -> None:
        if u not in self.marked:
            self._undo.append(("m", u))
            self.marked.add(u)

    def _spend(self, amount: int, consumed: int = 0) -> None:
        if amount or consumed:
            self._undo.append(("b", self.budget, self.consumed))
            self.budget -= amount
            self.consumed += consumed

    def _record(self, entry: TraceEntry) -> None:
        self._undo.append(("t",))
        self.trace.append(entry)

    # -- operations -------------------------------------------------------

    def adjust(self, u: int, w: int) -> None:
        """
        Commit ``w`` more power to ``u``.

        Every residual demand on u's side drops by ``w``; edges whose demand
        reaches 0 are covered and removed. Power mode spends ``w``; support
        mode only marks ``u``.
        """
        if u not in self.live:
            raise ValueError(f"adjust on removed vertex {u}")
        if w < 1:
            raise ValueError(f"adjust amount must be positive, got {w}")
        for z, w_uz in list(self.residual[u].items()):
            if w_uz <= w:
                self._delete_edge(u, z)
            else:
                self._set_demand(u, z, w_uz - w)
        self._force(u, w)
        self._mark(u)
        if self.mode is BudgetMode.POWER:
            self._spend(w)
        self._record(TraceEntry("adjust", u, w))

    def set_power(self, u: int, w: int) -> None:
        """
        Fix the remaining power of ``u`` at ``w`` and remove it.

        Neighbors whose edge to ``u`` is left uncovered are adjusted by their
        own residual demand on that edge.
        """
        if u not in self.live:
            raise ValueError(f"set on removed vertex {u}")
        if w < 0:
            raise ValueError(f"set power must be non-negative, got {w}")
        cascade = [(v, self.residual[v][u]) for v, w_uv in self.residual[u].items() if w_uv > w]
        self._remove(u, w)
        for v, w_vu in sorted(cascade):
            self.adjust(v, w_vu)

    def _remove(self, u: int, w: int) -> None:
        for z in list(self.residual[u]):
            self._delete_edge(u, z)
        self._kill(u)
        if w > 0:
            self._force(u, w)
        if self.mode is BudgetMode.POWER:
            self._spend(w)
        elif w > 0 or u in self.marked:
            self._spend(1)
        self._record(TraceEntry("set", u, w))

    def remove_isolated(self, u: int) -> None:
        """Drop a degree-0 vertex; a marked vertex costs one unit of support."""
        if self.residual[u]:
            raise ValueError(f"vertex {u} still has {len(self.residual[u])} edges")
        self._kill(u)
        if self.mode is BudgetMode.SUPPORT and u in self.marked:
            self._spend(1)
        self._record(TraceEntry("remove", u))

    def reweight(self, u: int, v: int, new_uv: int, new_vu: int, consumed: int) -> None:
        """
        Lower the demands of edge (u, v) while spending ``consumed`` budget.

        :meth:`lift` credits the reduction back to whichever endpoint ends up
        covering the edge.
        """
        old_uv, old_vu = self.residual[u][v], self.residual[v][u]
        if not (1 <= new_uv <= old_uv and 1 <= new_vu <= old_vu):
            raise ValueError(f"reweight must lower demands of ({u}, {v}) and keep them positive")
        self._set_demand(u, v, new_uv)
        self._set_demand(v, u, new_vu)
        self._spend(consumed, consumed)
        self._record(TraceEntry("reweight", u, consumed, v, old_uv, old_vu, new_uv, new_vu))

    # -- queries ----------------------------------------------------------

    def degree(self, u: int) -> int:
        return len(self.residual[u])

    def neighbors(self, u: int) -> List[int]:
        return sorted(self.residual[u])

    def weight(self, u: int, v: int) -> int:
        """Residual demand on u's side of (u, v)."""
        return self.residual[u][v]

    def max_demand_of(self, u: int) -> int:
        """M(u): largest residual demand on u's side."""
        return max(self.residual[u].values(), default=0)

    def pressure(self, u: int) -> int:
        """P(u): sum of residual demands pointing at ``u`` from its neighbors."""
        return sum(self.residual[z][u] for z in self.residual[u])

    def second_neighborhood(self, u: int) -> Set[int]:
        """N²(u): vertices at distance exactly two from ``u``."""
        near = set(self.residual[u])
        far = {y for z in near for y in self.residual[z]}
        return far - near - {u}

    def component(self, u: int) -> List[int]:
        """Sorted vertex set of u's connected component in the residual graph."""
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.residual[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def edges(self) -> List[Edge]:
        """Live edges with ``u < v``, in vertex order."""
        return [
            Edge(u, v, w_uv, self.residual[v][u])
            for u in sorted(self.residual)
            for v, w_uv in sorted(self.residual[u].items())
            if u < v
        ]

    def has_edges(self) -> bool:
        return any(self.residual[u] for u in self.residual)

    def max_weight(self) -> int:
        return max((max(nbrs.values()) for nbrs in self.residual.values() if nbrs), default=0)

    def isolated(self) -> List[int]:
        return sorted(u for u, nbrs in self.residual.items() if not nbrs)

    def pending_support(self) -> int:
        """Marked vertices still live; each will cost one unit of support."""
        return len(self.marked & self.live)

    def within_budget(self) -> bool:
        """Whether the remaining budget can still be met."""
        if self.mode is BudgetMode.SUPPORT:
            return self.budget - self.pending_support() >= 0
        return self.budget >= 0

    def residual_instance(
        self, vertices: Optional[Iterable[int]] = None
    ) -> Tuple[DpvcInstance, List[int]]:
        """
        The live residual graph (or its restriction to ``vertices``) relabeled densely.

        Returns:
            The residual instance and the list mapping its ids to original ids
        """
        keep = sorted(self.live if vertices is None else set(vertices) & self.live)
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            Edge(index[u], index[v], w_uv, self.residual[v][u])
            for u in keep
            for v, w_uv in sorted(self.residual[u].items())
            if u < v and v in index
        ]
        return DpvcInstance(n=len(keep), edges=edges), keep

    def signature(self) -> Tuple[Tuple[int, ...], Tuple[Edge, ...]]:
        """Hashable snapshot of the live vertices and residual edges."""
        return tuple(sorted(self.live)), tuple(self.edges())

    def lift(self) -> PowerAssignment:
        """
        Map the applied operations back to a power assignment on the original instance.

        Walks the trace backwards; each reweight credits its reduction to the
        endpoint whose later power already covers the reduced demand.
        """
        gained: Dict[int, int] = {}
        for entry in reversed(self.trace):
            if entry.op in ("adjust", "set"):
                gained[entry.u] = gained.get(entry.u, 0) + entry.amount
            elif entry.op == "reweight":
                if gained.get(entry.u, 0) >= entry.new_uv:
                    gained[entry.u] = gained.get(entry.u, 0) + entry.old_uv - entry.new_uv
                else:
                    gained[entry.v] = gained.get(entry.v, 0) + entry.old_vu - entry.new_vu
        return PowerAssignment(p=gained)

    @classmethod
    def replay(
        cls,
        inst: DpvcInstance,
        trace: Iterable[TraceEntry],
        budget: int = 0,
        mode: BudgetMode = BudgetMode.POWER,
    ) -> "BranchState":
        """Rebuild a state by re-applying ``trace`` to ``inst``."""
        state = cls(inst, budget, mode)
        for entry in trace:
            if entry.op == "adjust":
                state.adjust(entry.u, entry.amount)
            elif entry.op == "set":
                # cascaded adjusts follow as their own entries
                state._remove(entry.u, entry.amount)
            elif entry.op == "remove":
                state.remove_isolated(entry.u)
            elif entry.op == "reweight":
                state.reweight(entry.u, entry.v, entry.new_uv, entry.new_vu, entry.amount)
            else:
                raise ValueError(f"unknown trace operation: {entry.op}")
        return state
