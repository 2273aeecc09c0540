"""
Quadratic-vertex kernel for the support-bounded problem.
"""

import logging
from enum import Enum
from typing import Dict, Iterable, List, Optional

from pydantic import BaseModel, Field

from power_cover.core.instance import DpvcInstance, PowerAssignment
from power_cover.core.state import BranchState, BudgetMode, TraceEntry

logger = logging.getLogger(__name__)


class KernelStatus(str, Enum):
    NO = "NO"
    REDUCED = "REDUCED"


class KernelOutcome(BaseModel):
    """
    Kernelization result.

    A REDUCED outcome carries the reduced instance with its own dense ids,
    ``vertex_map[reduced] = original``, the vertices marked during reduction
    (reduced ids; each still costs one unit of support) and the power already
    committed per original vertex.
    """

    status: KernelStatus
    instance: Optional[DpvcInstance] = None
    k_remaining: int = 0
    trace: List[TraceEntry] = Field(default_factory=list)
    vertex_map: List[int] = Field(default_factory=list)
    marked: List[int] = Field(default_factory=list)
    forced: Dict[int, int] = Field(default_factory=dict)

    @property
    def reduced(self) -> bool:
        return self.status is KernelStatus.REDUCED

    def lift(self, witness: PowerAssignment) -> PowerAssignment:
        """Map a witness of the reduced instance to one of the original instance."""
        if not self.reduced:
            raise ValueError("cannot lift through a NO kernel")
        powers = dict(self.forced)
        for local, power in witness.p.items():
            original = self.vertex_map[local]
            powers[original] = powers.get(original, 0) + power
        return PowerAssignment(p=powers)


def kernelize(
    inst: DpvcInstance, k: int, marked: Optional[Iterable[int]] = None
) -> KernelOutcome:
    """
    Reduce ``inst`` to at most k'(k'+1) vertices or answer NO.

    Rules, to a fixpoint:

    - a vertex of degree ≥ k+1 gets Adjust(u, w_{k+1}), the (k+1)-st largest
      demand on its side;
    - a degree-0 vertex is removed, costing one unit of k when marked.

    Args:
        inst: Instance to reduce
        k: Support budget
        marked: Vertices already powered

    Returns:
        NO, or the reduced instance with what is needed to lift its solutions
    """
    s = BranchState(inst, k, BudgetMode.SUPPORT, marked)
    changed = True
    while changed and s.budget >= 0:
        changed = False
        for u in s.isolated():
            s.remove_isolated(u)
            changed = True
        if s.budget < 0:
            break
        for u in sorted(s.live):
            if s.degree(u) >= s.budget + 1:
                demands = sorted(s.residual[u].values(), reverse=True)
                amount = demands[s.budget]
                logger.debug(f"Kernel: degree {s.degree(u)} at {u}, Adjust({u}, {amount})")
                s.adjust(u, amount)
                changed = True
                break

    if s.budget < 0:
        logger.info(f"Kernel: budget exhausted, answer NO (k={k})")
        return KernelOutcome(status=KernelStatus.NO, trace=list(s.trace))

    bound = s.budget * (s.budget + 1)
    if len(s.live) > bound:
        logger.info(f"Kernel: {len(s.live)} vertices left, bound {bound}, answer NO")
        return KernelOutcome(status=KernelStatus.NO, k_remaining=s.budget, trace=list(s.trace))

    reduced, mapping = s.residual_instance()
    index = {v: i for i, v in enumerate(mapping)}
    logger.info(f"Kernel: n={inst.n} -> {reduced.n}, k={k} -> {s.budget}")
    return KernelOutcome(
        status=KernelStatus.REDUCED,
        instance=reduced,
        k_remaining=s.budget,
        trace=list(s.trace),
        vertex_map=mapping,
        marked=sorted(index[v] for v in s.marked & s.live),
        forced=dict(s.forced),
    )
