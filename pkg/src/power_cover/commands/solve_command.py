"""
Solve command: dispatch an instance to one engine and report a verified result.
"""

import logging
import time
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel

from power_cover.core.instance import DpvcInstance, PowerAssignment, is_feasible
from power_cover.solvers.optimize import (
    minimize_power,
    minimize_support,
    power_decider,
    support_decider,
)
from power_cover.solvers.oracle import brute_force_opt, brute_force_opt_with_support
from power_cover.solvers.outcome import SolveOutcome
from power_cover.solvers.support import hybrid_k_solve
from power_cover.treewidth.approx import fptas_solve
from power_cover.treewidth.decomposition import NiceTreeDecomposition
from power_cover.treewidth.dp import solve_tw_exact
from power_cover.utils.config import ENGINES

logger = logging.getLogger(__name__)


class RunReport(BaseModel):
    """Outcome of one ``solve`` run; the witness is verified before the report exists."""

    instance: str
    engine: str
    mode: str
    parameter: Optional[str] = None
    answer: Optional[bool] = None
    value: Optional[int] = None
    support: Optional[int] = None
    witness: Optional[PowerAssignment] = None
    witness_path: Optional[str] = None
    wall_time: float = 0.0
    nodes: int = 0
    leaves: int = 0

    def lines(self) -> List[str]:
        """Deterministic ``key=value`` lines; wall time is left out."""
        rows = [f"instance={self.instance}", f"engine={self.engine}", f"mode={self.mode}"]
        if self.parameter is not None:
            rows.append(f"parameter={self.parameter}")
        if self.answer is not None:
            rows.append(f"answer={'YES' if self.answer else 'NO'}")
        if self.value is not None:
            rows.append(f"value={self.value}")
        if self.support is not None:
            rows.append(f"support={self.support}")
        rows.append(f"nodes={self.nodes}")
        if self.witness_path:
            rows.append(f"witness={self.witness_path}")
        return rows


def parse_eps(text: str) -> Fraction:
    """Parse a positive rational such as ``1/2`` or ``0.25``."""
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"eps must be a rational like 1/2, got {text!r}") from None
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {text}")
    return eps


def _check_parameters(engine: str, P: Optional[int], k: Optional[int]) -> None:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    if P is not None and k is not None:
        raise ValueError("give at most one of P and k")
    if engine in ("branch-p", "tw-exact") and k is not None:
        raise ValueError(f"engine {engine} bounds total power; use --P")
    if engine in ("branch-k", "hybrid-k") and P is not None:
        raise ValueError(f"engine {engine} bounds support; use --k")
    if engine == "tw-approx" and (P is not None or k is not None):
        raise ValueError("tw-approx returns an approximate cover and takes no budget")
    for name, budget in (("P", P), ("k", k)):
        if budget is not None and budget < 0:
            raise ValueError(f"{name} must be non-negative, got {budget}")


def _brute(
    inst: DpvcInstance, P: Optional[int], k: Optional[int], edge_limit: Optional[int]
) -> SolveOutcome:
    if k is not None:
        found = brute_force_opt_with_support(inst, k, edge_limit)
        if found is None:
            return SolveOutcome(answer=False)
        return SolveOutcome(answer=True, opt_value=found.opt_value, witness=found.witness)
    result = brute_force_opt(inst, edge_limit)
    if P is not None and result.opt_value > P:
        return SolveOutcome(answer=False, opt_value=result.opt_value)
    return SolveOutcome(answer=True, opt_value=result.opt_value, witness=result.witness)


def _dispatch(
    inst: DpvcInstance,
    engine: str,
    P: Optional[int],
    k: Optional[int],
    eps: Optional[Fraction],
    td: Optional[NiceTreeDecomposition],
    edge_limit: Optional[int],
) -> SolveOutcome:
    if engine == "brute":
        return _brute(inst, P, k, edge_limit)
    if engine == "branch-p":
        return power_decider(inst)(inst, P) if P is not None else minimize_power(inst)
    if engine == "branch-k":
        return support_decider(inst)(inst, k) if k is not None else minimize_support(inst)
    if engine == "hybrid-k":
        return hybrid_k_solve(inst, k) if k is not None else minimize_support(inst, hybrid_k_solve)
    if engine == "tw-exact":
        result = solve_tw_exact(inst, td)
        assert result.value is not None
        if P is not None and result.value > P:
            return SolveOutcome(answer=False, opt_value=result.value)
        return SolveOutcome(answer=True, opt_value=result.value, witness=result.witness)
    witness = fptas_solve(inst, eps or Fraction(1, 2), td)
    return SolveOutcome(answer=True, opt_value=witness.value, witness=witness)


def run_solve(
    inst: DpvcInstance,
    engine: str,
    P: Optional[int] = None,
    k: Optional[int] = None,
    eps: Optional[Fraction] = None,
    td: Optional[NiceTreeDecomposition] = None,
    edge_limit: Optional[int] = None,
    instance_id: str = "-",
) -> RunReport:
    """
    Run one engine on ``inst``.

    With ``P`` or ``k`` the run decides that budget; without either it
    optimizes (total power, or support for ``branch-k`` and ``hybrid-k``).

    Args:
        inst: Instance to solve
        engine: One of ``ENGINES``
        P: Total power budget
        k: Support budget
        eps: Accuracy for ``tw-approx``
        td: Decomposition for the ``tw-*`` engines
        edge_limit: Oracle edge limit for ``brute``
        instance_id: Label carried into the report

    Returns:
        Report whose witness, if any, is feasible and within the budget

    Raises:
        ValueError: On an engine/parameter/instance mismatch
        RuntimeError: If an engine returns a witness that fails verification
    """
    _check_parameters(engine, P, k)
    decision = P is not None or k is not None
    start = time.perf_counter()
    outcome = _dispatch(inst, engine, P, k, eps, td, edge_limit)
    elapsed = time.perf_counter() - start

    witness = outcome.witness if outcome.answer else None
    if witness is not None:
        if not is_feasible(inst, witness):
            raise RuntimeError(f"engine {engine} returned an infeasible witness")
        if P is not None and witness.value > P:
            raise RuntimeError(f"engine {engine} witness exceeds P={P}")
        if k is not None and witness.support > k:
            raise RuntimeError(f"engine {engine} witness exceeds k={k}")

    support_objective = engine in ("branch-k", "hybrid-k") and not decision
    value = outcome.opt_value
    if support_objective:
        value = witness.support if witness is not None else None
    elif value is None and witness is not None and not decision:
        value = witness.value

    parameter = None
    if P is not None:
        parameter = f"P={P}"
    elif k is not None:
        parameter = f"k={k}"
    elif engine == "tw-approx":
        parameter = f"eps={eps or Fraction(1, 2)}"

    logger.debug(f"solve {instance_id} with {engine}: answer={outcome.answer}, value={value}")
    return RunReport(
        instance=instance_id,
        engine=engine,
        mode="decision" if decision else "optimization",
        parameter=parameter,
        answer=outcome.answer if decision else None,
        value=value,
        support=witness.support if witness is not None else None,
        witness=witness,
        wall_time=elapsed,
        nodes=outcome.stats.nodes,
        leaves=outcome.stats.leaves,
    )
