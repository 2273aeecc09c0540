"""
Brute-force exact solvers used as ground truth.

Every feasible assignment induces an orientation naming a covering endpoint per
edge, and the cheapest assignment for a fixed orientation gives each vertex the
largest demand oriented towards it. Enumerating orientations is therefore exact.
"""

import logging
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from power_cover.core.instance import DpvcInstance, Edge, PowerAssignment

logger = logging.getLogger(__name__)

DEFAULT_EDGE_LIMIT = 24

VC_VERTEX_LIMIT = 16


class OracleLimitError(ValueError):
    """Raised when an instance is too large for exhaustive enumeration."""


class OracleResult(BaseModel):
    """Exact optimum, minimum support and an optimal witness."""

    opt_value: int
    opt_support: int
    witness: PowerAssignment


def _check_limit(inst: DpvcInstance, edge_limit: Optional[int]) -> None:
    limit = DEFAULT_EDGE_LIMIT if edge_limit is None else edge_limit
    if inst.m > limit:
        raise OracleLimitError(f"instance has {inst.m} edges, oracle limit is {limit}")


def _search_orientations(
    inst: DpvcInstance, support_limit: Optional[int] = None
) -> Optional[Tuple[int, List[int]]]:
    """
    Depth-first orientation search with a partial-sum bound.

    An edge already covered by the partial assignment is skipped: orienting it
    elsewhere can only raise powers.

    Returns:
        (minimum value, optimal power list) or None when no orientation keeps
        the support within ``support_limit``
    """
    edges: List[Edge] = sorted(inst.edges, key=lambda e: -max(e.w_uv, e.w_vu))
    power = [0] * inst.n
    best_value = sum(max(e.w_uv, e.w_vu) for e in edges) + 1
    best: Optional[List[int]] = None
    limit = inst.n if support_limit is None else support_limit

    def visit(i: int, cost: int, support: int) -> None:
        nonlocal best_value, best
        if cost >= best_value:
            return
        while i < len(edges):
            u, v, w_uv, w_vu = edges[i]
            if power[u] >= w_uv or power[v] >= w_vu:
                i += 1
                continue
            break
        else:
            best_value = cost
            best = list(power)
            return
        u, v, w_uv, w_vu = edges[i]
        for x, w in ((u, w_uv), (v, w_vu)):
            old = power[x]
            grows = 1 if old == 0 else 0
            if support + grows > limit:
                continue
            power[x] = w
            visit(i + 1, cost + w - old, support + grows)
            power[x] = old

    visit(0, 0, 0)
    if best is None:
        return None
    return best_value, best


def _search_support(n: int, edges: Sequence[Tuple[int, int]]) -> int:
    chosen = [False] * n
    best = n + 1

    def visit(i: int, count: int) -> None:
        nonlocal best
        if count >= best:
            return
        while i < len(edges) and (chosen[edges[i][0]] or chosen[edges[i][1]]):
            i += 1
        if i == len(edges):
            best = count
            return
        for x in edges[i]:
            chosen[x] = True
            visit(i + 1, count + 1)
            chosen[x] = False

    visit(0, 0)
    return best


def brute_force_min_support(inst: DpvcInstance, edge_limit: Optional[int] = None) -> int:
    """
    Minimum number of positive-power vertices over all feasible assignments.

    Args:
        inst: Instance within the oracle edge limit
        edge_limit: Override for the edge limit

    Returns:
        The minimum support
    """
    _check_limit(inst, edge_limit)
    return _search_support(inst.n, [(e.u, e.v) for e in inst.edges])


def brute_force_opt(inst: DpvcInstance, edge_limit: Optional[int] = None) -> OracleResult:
    """
    Exact minimum total power by orientation enumeration.

    Args:
        inst: Instance within the oracle edge limit
        edge_limit: Override for the edge limit

    Returns:
        Optimum value, minimum support and an optimal witness

    Raises:
        OracleLimitError: If the instance has too many edges
    """
    _check_limit(inst, edge_limit)
    found = _search_orientations(inst)
    assert found is not None
    value, powers = found
    witness = PowerAssignment(p=dict(enumerate(powers)))
    support = brute_force_min_support(inst, edge_limit)
    logger.debug(f"Oracle: n={inst.n}, m={inst.m}, opt={value}, min support={support}")
    return OracleResult(opt_value=value, opt_support=support, witness=witness)


def brute_force_opt_with_support(
    inst: DpvcInstance, k: int, edge_limit: Optional[int] = None
) -> Optional[OracleResult]:
    """
    Least total power among feasible assignments with support at most ``k``.

    Returns:
        The constrained optimum, or None when no assignment has support ≤ k
    """
    _check_limit(inst, edge_limit)
    if k < 0:
        return None
    found = _search_orientations(inst, support_limit=k)
    if found is None:
        return None
    value, powers = found
    return OracleResult(
        opt_value=value,
        opt_support=brute_force_min_support(inst, edge_limit),
        witness=PowerAssignment(p=dict(enumerate(powers))),
    )


def brute_force_vertex_cover(n: int, edges: Iterable[Tuple[int, int]]) -> int:
    """
    Minimum vertex cover size by subset enumeration in increasing size.

    Kept independent of the orientation search so the two can check each other.
    """
    if n > VC_VERTEX_LIMIT:
        raise OracleLimitError(f"vertex cover enumeration limited to {VC_VERTEX_LIMIT} vertices")
    pairs = list(edges)
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in pairs):
                return size
    return n
