"""
Approximation scheme over a tree decomposition.

Guess the largest power M an optimal cover uses, force every edge it cannot
pay for, scale demands down to at most n² when M exceeds n², and run the list
DP with levels restricted to ceilings of powers of (1 + ε).
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from power_cover.core.instance import DpvcInstance, Edge, PowerAssignment, is_feasible
from power_cover.core.state import BranchState, BudgetMode
from power_cover.treewidth.decomposition import NiceTreeDecomposition, min_fill_decomposition
from power_cover.treewidth.dp import ListInstance, ldpvc_dp

logger = logging.getLogger(__name__)


class RoundingScale(BaseModel):
    """How demands were scaled: ``w' = ⌊w·n²/M⌋`` when ``scaled``."""

    model_config = ConfigDict(frozen=True)

    scaled: bool
    max_demand: int
    n_squared: int


def geometric_levels(n: int, eps: Fraction) -> List[int]:
    """
    ``{0} ∪ {⌈(1+ε)^i⌉}`` up to the first power reaching n², capped at (1+ε)·n².

    Every integer demand ``a ≤ n²`` rounds up to a level of at most ``(1+ε)·a``.

    Args:
        n: Vertex count
        eps: Positive accuracy parameter

    Returns:
        Sorted distinct levels
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    target = max(n * n, 1)
    cap = (1 + eps) * target
    levels = {0}
    power = Fraction(1)
    while True:
        levels.add(math.ceil(power))
        if power >= target:
            break
        power *= 1 + eps
    levels = {level for level in levels if level <= cap}
    assert max(levels) >= target and all(level <= cap for level in levels)
    return sorted(levels)


def round_up_to_levels(value: int, levels: List[int]) -> int:
    """Smallest level ``≥ value``."""
    for level in levels:
        if level >= value:
            return level
    raise ValueError(f"{value} exceeds the largest level {levels[-1]}")


def fptas_guess_and_force(
    inst: DpvcInstance, m_guess: int
) -> Tuple[DpvcInstance, PowerAssignment]:
    """
    Force the side of every edge whose other demand exceeds ``m_guess``.

    Args:
        inst: Instance to reduce
        m_guess: Guessed largest power of an optimal cover

    Returns:
        Residual instance on the same vertex ids (every demand ≤ ``m_guess``)
        and the power committed while forcing
    """
    s = BranchState(inst, 0, BudgetMode.POWER)
    while True:
        heavy = [
            (u, z)
            for u in sorted(s.live)
            for z, w in sorted(s.residual[u].items())
            if w > m_guess
        ]
        if not heavy:
            break
        u, z = heavy[0]
        s.adjust(z, s.weight(z, u))
    residual, _ = s.residual_instance()
    return residual, s.lift()


def fptas_round_weights(inst: DpvcInstance) -> Tuple[DpvcInstance, RoundingScale]:
    """
    Scale demands to at most n² when the largest demand M exceeds n².

    A side whose demand rounds to 0 is covered by any power, so its edge is
    dropped.
    """
    n_squared = inst.n * inst.n
    top = inst.max_demand
    if top <= n_squared:
        return inst, RoundingScale(scaled=False, max_demand=top, n_squared=n_squared)
    edges = []
    for u, v, w_uv, w_vu in inst.edges:
        a = w_uv * n_squared // top
        b = w_vu * n_squared // top
        if a and b:
            edges.append(Edge(u, v, a, b))
    logger.debug(f"Rounded demands by n²/M = {n_squared}/{top}; kept {len(edges)} of {inst.m}")
    return DpvcInstance(n=inst.n, edges=edges), RoundingScale(
        scaled=True, max_demand=top, n_squared=n_squared
    )


def trim_powers(inst: DpvcInstance, a: PowerAssignment) -> PowerAssignment:
    """Lower each vertex, in id order, to the least power that keeps the cover feasible."""
    powers = dict(a.p)
    for v in range(inst.n):
        if v not in powers:
            continue
        needed = [
            entry.own
            for entry in inst.incident(v)
            if powers.get(entry.other, 0) < entry.theirs
        ]
        powers[v] = max(needed, default=0)
    return PowerAssignment(p=powers)


def fptas_lift(
    inst: DpvcInstance, scale: RoundingScale, rounded: PowerAssignment
) -> PowerAssignment:
    """
    Map a cover of the rounded instance back to a cover of ``inst``.

    Each vertex with edges gets ``⌊(p' + 1)·M/n²⌋``, then powers are trimmed.
    """
    if not scale.scaled:
        return rounded
    powers: Dict[int, int] = {}
    for v in range(inst.n):
        if inst.degree(v):
            powers[v] = (rounded[v] + 1) * scale.max_demand // scale.n_squared
    return trim_powers(inst, PowerAssignment(p=powers))


def _level_lists(inst: DpvcInstance, levels: List[int]) -> Dict[int, List[int]]:
    return {
        v: sorted({0} | {round_up_to_levels(entry.own, levels) for entry in inst.incident(v)})
        for v in range(inst.n)
    }


def fptas_solve(
    inst: DpvcInstance, eps: Fraction, td: Optional[NiceTreeDecomposition] = None
) -> PowerAssignment:
    """
    Approximate cover within ``(1+ε)·OPT``, or ``(1+ε+1/n)·OPT`` when demands are rescaled.

    Every distinct demand value is tried as the guess; the cheapest lift wins.

    Args:
        inst: Any instance
        eps: Positive accuracy parameter
        td: Nice decomposition of ``inst``; min-fill when omitted

    Returns:
        Feasible assignment for ``inst``

    Raises:
        ValueError: If ``eps`` is not positive
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if inst.m == 0:
        return PowerAssignment()
    if td is None:
        td = min_fill_decomposition(inst)
    levels = geometric_levels(inst.n, eps)

    best: Optional[PowerAssignment] = None
    for guess in inst.demands():
        residual, forced = fptas_guess_and_force(inst, guess)
        rounded, scale = fptas_round_weights(residual)
        result = ldpvc_dp(ListInstance(inst=rounded, levels=_level_lists(rounded, levels)), td)
        if not result.feasible or result.witness is None:
            raise RuntimeError(f"geometric list DP infeasible for guess {guess}")
        lifted = fptas_lift(residual, scale, result.witness)
        total = {v: forced[v] + lifted[v] for v in range(inst.n)}
        candidate = trim_powers(inst, PowerAssignment(p=total))
        if not is_feasible(inst, candidate):
            raise RuntimeError(f"approximate cover for guess {guess} is infeasible")
        logger.debug(f"Approximation: guess {guess} gives {candidate.value}")
        if best is None or candidate.value < best.value:
            best = candidate
    assert best is not None
    logger.info(f"Approximation with eps={eps}: value {best.value}")
    return best
