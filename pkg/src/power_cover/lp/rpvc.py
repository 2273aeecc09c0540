"""
Linear relaxation of symmetric instances and the bounds derived from it.

The relaxation is ``min Σ x_i`` subject to ``x_u + x_v ≥ w_uv`` and ``x ≥ 0``.
It is solved through its dual, ``max Σ w_e y_e`` subject to
``Σ_{e ∋ i} y_e ≤ 1`` and ``y ≥ 0``, whose slack basis is feasible; the
relaxation's basic optimum is read off the final tableau.
"""

import logging
import math
from fractions import Fraction
from typing import Dict

from pydantic import BaseModel, ConfigDict, Field

from power_cover.core.instance import DpvcInstance, Edge
from power_cover.lp.simplex import SimplexTableau

logger = logging.getLogger(__name__)


class LpSolution(BaseModel):
    """Basic optimum of the relaxation together with its dual certificate."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    x: Dict[int, Fraction]
    value: Fraction
    basic: bool = True
    y: Dict[int, Fraction] = Field(default_factory=dict)
    pivots: int = 0


def solve_rpvc(inst: DpvcInstance) -> LpSolution:
    """
    Solve the relaxation of a symmetric instance exactly.

    Args:
        inst: Symmetric instance

    Returns:
        Basic optimal solution; ``value`` is checked against the dual value

    Raises:
        ValueError: If the instance is not symmetric
        RuntimeError: If the primal and dual certificates disagree
    """
    if not inst.symmetric:
        raise ValueError("the relaxation is defined for symmetric instances")
    if inst.m == 0:
        return LpSolution(x={v: Fraction(0) for v in range(inst.n)}, value=Fraction(0))

    rows = [[0] * inst.m for _ in range(inst.n)]
    for e, (u, v, _, _) in enumerate(inst.edges):
        rows[u][e] = 1
        rows[v][e] = 1
    tableau = SimplexTableau(rows, [1] * inst.n, [edge.w_uv for edge in inst.edges])
    status = tableau.solve()
    if status != "optimal":
        raise RuntimeError(f"relaxation solve ended {status}")

    x = tableau.dual()
    y = tableau.primal()
    value = sum(x.values(), Fraction(0))
    dual_value = sum((inst.edges[e].w_uv * y[e] for e in y), Fraction(0))
    _certify(inst, x, y)
    if value != dual_value or value != tableau.objective:
        raise RuntimeError(
            f"relaxation certificate mismatch: primal {value}, dual {dual_value}, "
            f"tableau {tableau.objective}"
        )
    logger.debug(f"Relaxation value {value} after {tableau.pivots} pivots")
    return LpSolution(x=x, value=value, basic=True, y=y, pivots=tableau.pivots)


def _certify(inst: DpvcInstance, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> None:
    for u, v, w, _ in inst.edges:
        if x[u] + x[v] < w:
            raise RuntimeError(f"relaxation solution violates edge ({u}, {v})")
    if any(value < 0 for value in x.values()) or any(value < 0 for value in y.values()):
        raise RuntimeError("relaxation certificate has a negative entry")
    load = {v: Fraction(0) for v in range(inst.n)}
    for e, (u, v, _, _) in enumerate(inst.edges):
        load[u] += y[e]
        load[v] += y[e]
    if any(total > 1 for total in load.values()):
        raise RuntimeError("dual certificate violates a vertex constraint")


def check_semi_integrality(sol: LpSolution) -> bool:
    """
    True iff every ``2·x_i`` is a non-negative integer.

    Raises:
        ValueError: If the solution is not basic
    """
    if not sol.basic:
        raise ValueError("semi-integrality is only defined for basic solutions")
    return all(value >= 0 and (2 * value).denominator == 1 for value in sol.x.values())


def lp_lower_bound(inst: DpvcInstance) -> int:
    """
    Integer lower bound on the optimum total power.

    Directed instances are relaxed with ``min(w_uv, w_vu)`` on each edge.
    """
    if inst.m == 0:
        return 0
    relaxed = inst
    if not inst.symmetric:
        relaxed = DpvcInstance(
            n=inst.n,
            edges=[Edge(u, v, min(a, b), min(a, b)) for u, v, a, b in inst.edges],
        )
    return math.ceil(solve_rpvc(relaxed).value)
