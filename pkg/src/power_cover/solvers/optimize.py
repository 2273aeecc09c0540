"""
Optimization by sweeping the budget of a decision solver upwards.
"""

import logging
from typing import Callable, Optional

from power_cover.core.instance import DpvcInstance
from power_cover.lp.rpvc import lp_lower_bound
from power_cover.solvers.algorithm1 import algorithm1_solve, solve_pvc_k
from power_cover.solvers.algorithm2 import algorithm2_solve
from power_cover.solvers.outcome import SolveOutcome, SolveStats
from power_cover.solvers.support import solve_dpvc_k

logger = logging.getLogger(__name__)

Decide = Callable[[DpvcInstance, int], SolveOutcome]


def power_decider(inst: DpvcInstance) -> Decide:
    """The symmetric solver for PVC instances, the directed solver otherwise."""
    return algorithm1_solve if inst.symmetric else algorithm2_solve


def support_decider(inst: DpvcInstance) -> Decide:
    return solve_pvc_k if inst.symmetric else solve_dpvc_k


def _sweep(inst: DpvcInstance, decide: Decide, start: int, stop: int) -> SolveOutcome:
    totals = SolveStats()
    for budget in range(start, stop + 1):
        outcome = decide(inst, budget)
        totals.nodes += outcome.stats.nodes
        totals.leaves += outcome.stats.leaves
        for rule, times in outcome.stats.rules.items():
            totals.count(rule, times)
        if outcome.answer:
            logger.debug(f"Budget sweep: first YES at {budget}")
            return SolveOutcome(
                answer=True, opt_value=budget, witness=outcome.witness, stats=totals
            )
    raise RuntimeError(f"no YES answer up to budget {stop}")


def minimize_power(inst: DpvcInstance, decide: Optional[Decide] = None) -> SolveOutcome:
    """
    Least total power, by deciding budgets from the relaxation bound upwards.

    Args:
        inst: Instance to optimize
        decide: Decision procedure; picked by symmetry when omitted

    Returns:
        Outcome whose ``opt_value`` is the optimum
    """
    decide = decide or power_decider(inst)
    ceiling = sum(min(e.w_uv, e.w_vu) for e in inst.edges)
    return _sweep(inst, decide, lp_lower_bound(inst), ceiling)


def minimize_support(inst: DpvcInstance, decide: Optional[Decide] = None) -> SolveOutcome:
    """Least number of powered vertices, by deciding budgets from 0 upwards."""
    decide = decide or support_decider(inst)
    return _sweep(inst, decide, 0, inst.n)
