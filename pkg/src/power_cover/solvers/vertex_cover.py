"""
Unweighted vertex cover decision by reduce-and-branch.

Degree-1 and degree-2 vertices are reduced (the latter by folding when its
neighbors are not adjacent); the search then branches on a maximum-degree
vertex: take it, or take its whole neighborhood.
"""

import logging
from itertools import count
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

from power_cover.core.instance import DpvcInstance, PowerAssignment
from power_cover.solvers.outcome import SolveOutcome, SolveStats

logger = logging.getLogger(__name__)

Graph = Dict[int, Set[int]]
Step = Union[Tuple[str, Set[int]], Tuple[str, int, int, int, int]]


def _copy(graph: Graph) -> Graph:
    return {v: set(nbrs) for v, nbrs in graph.items()}


def _drop(graph: Graph, v: int) -> None:
    for u in graph.pop(v):
        graph[u].discard(v)


def _edge_count(graph: Graph) -> int:
    return sum(len(nbrs) for nbrs in graph.values()) // 2


def _reduce(graph: Graph, k: int, fresh: Iterator[int], steps: List[Step]) -> int:
    """Apply degree-0/1/2 reductions in place; returns the remaining budget."""
    changed = True
    while changed and k >= 0:
        changed = False
        for v in sorted(graph):
            if v not in graph:
                continue
            nbrs = graph[v]
            if not nbrs:
                del graph[v]
                changed = True
            elif len(nbrs) == 1:
                (u,) = nbrs
                _drop(graph, u)
                steps.append(("take", {u}))
                k -= 1
                changed = True
            elif len(nbrs) == 2:
                a, b = sorted(nbrs)
                if b in graph[a]:
                    _drop(graph, a)
                    _drop(graph, b)
                    steps.append(("take", {a, b}))
                    k -= 2
                else:
                    merged = (graph[a] | graph[b]) - {v}
                    for x in (v, a, b):
                        _drop(graph, x)
                    folded = next(fresh)
                    graph[folded] = set(merged)
                    for y in merged:
                        graph[y].add(folded)
                    steps.append(("fold", folded, v, a, b))
                    k -= 1
                changed = True
            if k < 0:
                break
    return k


def _unwind(cover: Set[int], steps: List[Step]) -> Set[int]:
    for step in reversed(steps):
        if step[0] == "take":
            cover |= step[1]  # type: ignore[misc]
        else:
            _, folded, v, a, b = step  # type: ignore[misc]
            if folded in cover:
                cover.discard(folded)
                cover |= {a, b}
            else:
                cover.add(v)
    return cover


def _search(graph: Graph, k: int, fresh: Iterator[int], stats: SolveStats) -> Optional[Set[int]]:
    stats.nodes += 1
    steps: List[Step] = []
    k = _reduce(graph, k, fresh, steps)
    if k < 0:
        return None
    edges = _edge_count(graph)
    if edges == 0:
        stats.leaves += 1
        return _unwind(set(), steps)
    top = max(len(nbrs) for nbrs in graph.values())
    if edges > k * top:
        return None
    v = min(x for x, nbrs in graph.items() if len(nbrs) == top)

    branch = _copy(graph)
    _drop(branch, v)
    stats.count("vc_take_vertex")
    found = _search(branch, k - 1, fresh, stats)
    if found is not None:
        return _unwind(found | {v}, steps)

    nbrs = set(graph[v])
    if len(nbrs) <= k:
        branch = _copy(graph)
        for u in nbrs:
            _drop(branch, u)
        stats.count("vc_take_neighborhood")
        found = _search(branch, k - len(nbrs), fresh, stats)
        if found is not None:
            return _unwind(found | nbrs, steps)
    return None


def vertex_cover_decide(
    graph: Graph, k: int, stats: Optional[SolveStats] = None
) -> Optional[Set[int]]:
    """
    Find a vertex cover of size at most ``k``.

    Args:
        graph: Adjacency sets; not modified
        k: Cover size budget
        stats: Counters to update

    Returns:
        A cover of size ≤ k, or None if none exists
    """
    if k < 0:
        return None
    stats = stats if stats is not None else SolveStats()
    fresh = count(max(graph, default=-1) + 1)
    cover = _search(_copy(graph), k, fresh, stats)
    if cover is not None:
        cover = {v for v in cover if v in graph}
    return cover


def vc_subsolve(inst: DpvcInstance, k: int) -> SolveOutcome:
    """
    Decide whether a unit-weight instance has a cover of size ≤ ``k``.

    Raises:
        ValueError: If some demand is not 1
    """
    if any(e.w_uv != 1 or e.w_vu != 1 for e in inst.edges):
        raise ValueError("vertex cover sub-solver needs unit demands")
    graph: Graph = {v: set(inst.neighbors(v)) for v in range(inst.n)}
    stats = SolveStats()
    cover = vertex_cover_decide(graph, k, stats)
    if cover is None:
        return SolveOutcome(answer=False, stats=stats)
    witness = PowerAssignment(p={v: 1 for v in cover})
    return SolveOutcome(answer=True, opt_value=None, witness=witness, stats=stats)
