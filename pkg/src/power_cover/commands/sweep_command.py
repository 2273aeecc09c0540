"""
Sweep command: cross-check engines on a seeded random corpus.
"""

import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from power_cover.commands.solve_command import parse_eps
from power_cover.core.instance import DpvcInstance, format_instance, is_feasible
from power_cover.generators.random_graphs import gen_random
from power_cover.lp.rpvc import check_semi_integrality, solve_rpvc
from power_cover.solvers.kernel import kernelize
from power_cover.solvers.optimize import minimize_power, minimize_support
from power_cover.solvers.oracle import brute_force_min_support, brute_force_opt
from power_cover.solvers.support import hybrid_k_solve, solve_dpvc_k
from power_cover.treewidth.approx import fptas_solve
from power_cover.treewidth.dp import solve_tw_degree, solve_tw_exact, solve_tw_maxweight

logger = logging.getLogger(__name__)

POWER_ENGINES = ["brute", "branch-p", "tw-exact", "tw-maxweight", "tw-degree"]
SUPPORT_ENGINES = ["brute", "branch-k", "hybrid-k", "kernel"]
FPTAS_ENGINES = ["tw-approx"]
LP_ENGINES = ["lp", "brute"]

MODE_ENGINES = {
    "power": POWER_ENGINES,
    "support": SUPPORT_ENGINES,
    "fptas": FPTAS_ENGINES,
    "lp": LP_ENGINES,
}
DEFAULT_ENGINES = {
    "power": ["brute", "branch-p", "tw-exact"],
    "support": ["brute", "branch-k", "hybrid-k"],
    "fptas": ["tw-approx"],
    "lp": ["lp"],
}
DEFAULT_COUNTS = {"power": 100, "support": 100, "fptas": 200, "lp": 500}


class SweepPlan(BaseModel):
    """
    A seeded corpus and the engines to compare on it.

    The ``power`` and ``support`` modes compare optima across engines. The
    ``fptas`` and ``lp`` modes check guarantees instead: the approximation ratio
    for every accuracy in ``eps``, and half-integrality of the relaxation.
    """

    family: str = "pvc"
    count: int = Field(default=100, ge=0)
    n: int = Field(default=8, ge=2)
    m: int = Field(default=12, ge=0)
    w_max: int = Field(default=5, ge=1)
    seed: int = 0
    mode: str = "power"
    engines: List[str] = Field(default_factory=lambda: ["brute", "branch-p", "tw-exact"])
    edge_limit: Optional[int] = None
    eps: List[str] = Field(default_factory=lambda: ["1/10", "1/2", "1"])


class Disagreement(BaseModel):
    """One instance on which the engines disagreed or a guarantee failed."""

    index: int
    values: Dict[str, int]
    instance: str


class SweepResult(BaseModel):
    """Aggregated comparison over the whole corpus."""

    plan: SweepPlan
    agreed: int = 0
    disagreements: List[Disagreement] = Field(default_factory=list)
    optimum_histogram: Dict[int, int] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def validate_plan(plan: SweepPlan) -> None:
    """
    Raises:
        ValueError: On an unknown family, mode, engine or accuracy
    """
    if plan.family not in ("pvc", "dpvc"):
        raise ValueError(f"family must be pvc or dpvc, got {plan.family!r}")
    known = MODE_ENGINES.get(plan.mode)
    if known is None:
        raise ValueError(f"mode must be one of {', '.join(MODE_ENGINES)}, got {plan.mode!r}")
    if plan.mode == "lp" and plan.family != "pvc":
        raise ValueError("the lp sweep needs symmetric instances; use --family pvc")
    if plan.mode == "fptas":
        if not plan.eps:
            raise ValueError("the fptas sweep needs at least one eps")
        for text in plan.eps:
            parse_eps(text)
    unknown = [engine for engine in plan.engines if engine not in known]
    if unknown:
        raise ValueError(f"engines {unknown} are not available in {plan.mode} mode")
    if len(plan.engines) < 1:
        raise ValueError("at least one engine is needed")


def corpus_instance(plan: SweepPlan, index: int) -> DpvcInstance:
    """Instance ``index`` of the corpus; sizes are drawn up to ``plan.n`` and ``plan.m``."""
    rng = random.Random(plan.seed * 1_000_003 + index)
    n = rng.randint(2, plan.n)
    m = rng.randint(0, min(plan.m, n * (n - 1) // 2))
    return gen_random(n, m, plan.w_max, directed=plan.family == "dpvc", seed=rng.randrange(2**31))


def _kernel_support(inst: DpvcInstance) -> int:
    for k in range(inst.n + 1):
        kernel = kernelize(inst, k)
        if not kernel.reduced or kernel.instance is None:
            continue
        outcome = solve_dpvc_k(kernel.instance, kernel.k_remaining, kernel.marked)
        if outcome.answer and outcome.witness is not None:
            lifted = kernel.lift(outcome.witness)
            if not is_feasible(inst, lifted) or lifted.support > k:
                raise RuntimeError(f"kernel lift at k={k} is not a valid cover")
            return k
    raise RuntimeError("kernel search found no support bound up to n")


def optimum(inst: DpvcInstance, engine: str, mode: str, edge_limit: Optional[int] = None) -> int:
    """Optimal total power (``power`` mode) or support (``support`` mode) by one engine."""
    if mode == "power":
        if engine == "brute":
            return brute_force_opt(inst, edge_limit).opt_value
        if engine == "branch-p":
            return _value(minimize_power(inst).opt_value)
        if engine == "tw-exact":
            return _value(solve_tw_exact(inst).value)
        if engine == "tw-maxweight":
            return _value(solve_tw_maxweight(inst).value)
        return _value(solve_tw_degree(inst).value)
    if engine == "brute":
        return brute_force_min_support(inst, edge_limit)
    if engine == "branch-k":
        return _value(minimize_support(inst).opt_value)
    if engine == "hybrid-k":
        return _value(minimize_support(inst, hybrid_k_solve).opt_value)
    return _kernel_support(inst)


def _value(value: Optional[int]) -> int:
    if value is None:
        raise RuntimeError("engine returned no optimum")
    return value


def fptas_check(
    inst: DpvcInstance, eps: Sequence[str], edge_limit: Optional[int] = None
) -> Dict[str, int]:
    """
    Approximate ``inst`` at every accuracy and compare against the oracle optimum.

    The allowed value is ``(1+ε)·OPT`` when M ≤ n², and ``(1+ε+1/n)·OPT`` otherwise.

    Returns:
        The oracle optimum under ``brute``, one value per ``tw-approx@<ε>`` key and the
        number of infeasible or over-ratio answers under ``violations``
    """
    opt = brute_force_opt(inst, edge_limit).opt_value
    slack = Fraction(0) if inst.max_demand <= inst.n * inst.n else Fraction(1, inst.n)
    values = {"brute": opt}
    violations = 0
    for text in eps:
        accuracy = parse_eps(text)
        found = fptas_solve(inst, accuracy)
        values[f"tw-approx@{text}"] = found.value
        if not is_feasible(inst, found) or found.value > (1 + accuracy + slack) * opt:
            violations += 1
    values["violations"] = violations
    return values


def lp_check(
    inst: DpvcInstance, with_oracle: bool, edge_limit: Optional[int] = None
) -> Dict[str, int]:
    """
    Solve the relaxation of ``inst`` and check half-integrality of its basic optimum.

    With ``with_oracle`` the rounded-up value must also stay at or below the optimum.

    Raises:
        RuntimeError: If the relaxation's dual certificate does not match
    """
    sol = solve_rpvc(inst)
    half = check_semi_integrality(sol)
    values = {"lp_bound": math.ceil(sol.value), "half_integral": int(half)}
    violations = 0 if half else 1
    if with_oracle:
        opt = brute_force_opt(inst, edge_limit).opt_value
        values["brute"] = opt
        if values["lp_bound"] > opt:
            violations += 1
    values["violations"] = violations
    return values


def _run_case(job: Tuple[SweepPlan, int]) -> Tuple[int, Dict[str, int]]:
    plan, index = job
    inst = corpus_instance(plan, index)
    if plan.mode == "fptas":
        return index, fptas_check(inst, plan.eps, plan.edge_limit)
    if plan.mode == "lp":
        return index, lp_check(inst, "brute" in plan.engines, plan.edge_limit)
    return index, {
        engine: optimum(inst, engine, plan.mode, plan.edge_limit) for engine in plan.engines
    }


def _passes(plan: SweepPlan, values: Dict[str, int]) -> bool:
    if plan.mode in ("fptas", "lp"):
        return values["violations"] == 0
    return len(set(values.values())) == 1


def run_sweep(plan: SweepPlan, workers: int = 1, parallel: bool = False) -> SweepResult:
    """
    Compare the optima of ``plan.engines``, or check the mode's guarantee, on every instance.

    Args:
        plan: Corpus and engines
        workers: Process count when ``parallel``
        parallel: Spread instances over a process pool

    Returns:
        Passing count, histogram of optima and every failing instance with its values
    """
    validate_plan(plan)
    jobs: Sequence[Tuple[SweepPlan, int]] = [(plan, i) for i in range(plan.count)]
    if parallel and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_case, jobs))
    else:
        rows = [_run_case(job) for job in jobs]

    result = SweepResult(plan=plan)
    for index, values in sorted(rows):
        if _passes(plan, values):
            result.agreed += 1
            best = values.get("brute", next(iter(values.values())))
            result.optimum_histogram[best] = result.optimum_histogram.get(best, 0) + 1
            continue
        logger.warning(f"Sweep disagreement on instance {index}: {values}")
        result.disagreements.append(
            Disagreement(
                index=index,
                values=values,
                instance=format_instance(corpus_instance(plan, index), comment=f"sweep {index}"),
            )
        )
    logger.info(
        f"Sweep {plan.mode}: {result.agreed}/{plan.count} agree across {', '.join(plan.engines)}"
    )
    return result
