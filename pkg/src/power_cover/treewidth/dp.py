"""
List-restricted dynamic programming over a nice tree decomposition.

Every bag gets a dense table indexed by the mixed-radix product of the list
positions of its vertices (first bag vertex most significant). An entry holds
the least total power of the bag and everything forgotten below it, or None
when no list-respecting assignment covers the edges seen so far.
"""

import itertools
import logging
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from power_cover.core.instance import DpvcInstance, PowerAssignment, candidate_levels, is_feasible
from power_cover.treewidth.decomposition import (
    NiceTreeDecomposition,
    NodeKind,
    min_fill_decomposition,
)

logger = logging.getLogger(__name__)

Table = List[Optional[int]]


class ListInstance(BaseModel):
    """An instance together with the allowed power levels of each vertex."""

    inst: DpvcInstance
    levels: Dict[int, List[int]]

    @model_validator(mode="after")
    def _check_lists(self) -> "ListInstance":
        for v in range(self.inst.n):
            allowed = self.levels.get(v)
            if not allowed:
                raise ValueError(f"vertex {v} has an empty level list")
            if any(level < 0 for level in allowed):
                raise ValueError(f"vertex {v} has a negative level")
            self.levels[v] = sorted(set(allowed))
        return self

    @property
    def max_list(self) -> int:
        return max((len(levels) for levels in self.levels.values()), default=0)


class ListSolveResult(BaseModel):
    """DP answer; ``feasible`` is False when no list-respecting cover exists."""

    model_config = ConfigDict(frozen=True)

    feasible: bool
    value: Optional[int] = None
    witness: Optional[PowerAssignment] = None
    table_entries: int = 0


def _strides(bag: Sequence[int], levels: Dict[int, List[int]]) -> List[int]:
    strides = [1] * len(bag)
    for i in range(len(bag) - 2, -1, -1):
        strides[i] = strides[i + 1] * len(levels[bag[i + 1]])
    return strides


def _combos(bag: Sequence[int], levels: Dict[int, List[int]]) -> Iterator[Tuple[int, ...]]:
    return itertools.product(*(range(len(levels[v])) for v in bag))


def table_size(td: NiceTreeDecomposition, levels: Dict[int, List[int]]) -> int:
    """Total number of table entries the DP would allocate."""
    return sum(prod(len(levels[v]) for v in node.bag) for node in td.nodes)


class _ListDp:
    def __init__(self, li: ListInstance, td: NiceTreeDecomposition):
        self.li = li
        self.td = td
        self.levels = li.levels
        self.tables: Dict[int, Table] = {}
        self.choices: Dict[int, List[int]] = {}
        self.demand: Dict[Tuple[int, int], int] = {}
        for u, v, w_uv, w_vu in li.inst.edges:
            self.demand[(u, v)] = w_uv
            self.demand[(v, u)] = w_vu

    def run(self) -> Optional[int]:
        for i in self.td.postorder():
            node = self.td.nodes[i]
            if node.kind is NodeKind.LEAF:
                self.tables[i] = list(self.levels[node.bag[0]])
            elif node.kind is NodeKind.INTRODUCE:
                self.tables[i] = self._introduce(i)
            elif node.kind is NodeKind.FORGET:
                self.tables[i], self.choices[i] = self._forget(i)
            else:
                self.tables[i] = self._join(i)
            for child in node.children:
                del self.tables[child]
        return self.tables[self.td.root][0]

    def _introduce(self, i: int) -> Table:
        node = self.td.nodes[i]
        child = self.tables[node.children[0]]
        bag, v = node.bag, node.vertex
        assert v is not None
        q = bag.index(v)
        child_bag = bag[:q] + bag[q + 1:]
        child_strides = _strides(child_bag, self.levels)
        lv = self.levels[v]
        links = [
            (pos, self.demand[(v, u)], self.demand[(u, v)])
            for pos, u in enumerate(bag)
            if (v, u) in self.demand
        ]
        table: Table = []
        for combo in _combos(bag, self.levels):
            rest = combo[:q] + combo[q + 1:]
            base = child[sum(c * s for c, s in zip(rest, child_strides))]
            if base is None:
                table.append(None)
                continue
            power = lv[combo[q]]
            covered = all(
                power >= own or self.levels[bag[pos]][combo[pos]] >= theirs
                for pos, own, theirs in links
            )
            table.append(base + power if covered else None)
        return table

    def _forget(self, i: int) -> Tuple[Table, List[int]]:
        node = self.td.nodes[i]
        child = self.tables[node.children[0]]
        v = node.vertex
        child_bag = self.td.nodes[node.children[0]].bag
        q = child_bag.index(v)
        child_strides = _strides(child_bag, self.levels)
        table: Table = []
        argmin: List[int] = []
        for combo in _combos(node.bag, self.levels):
            base = sum(c * s for c, s in zip(combo[:q] + (0,) + combo[q:], child_strides))
            best: Optional[int] = None
            pick = -1
            for j in range(len(self.levels[v])):
                value = child[base + j * child_strides[q]]
                if value is not None and (best is None or value < best):
                    best, pick = value, j
            table.append(best)
            argmin.append(pick)
        return table, argmin

    def _join(self, i: int) -> Table:
        node = self.td.nodes[i]
        left = self.tables[node.children[0]]
        right = self.tables[node.children[1]]
        table: Table = []
        for index, combo in enumerate(_combos(node.bag, self.levels)):
            a, b = left[index], right[index]
            if a is None or b is None:
                table.append(None)
                continue
            shared = sum(self.levels[v][c] for v, c in zip(node.bag, combo))
            table.append(a + b - shared)
        return table

    def reconstruct(self) -> PowerAssignment:
        chosen: Dict[int, int] = {}
        stack = [self.td.root]
        while stack:
            i = stack.pop()
            node = self.td.nodes[i]
            if node.kind is NodeKind.FORGET:
                v = node.vertex
                assert v is not None
                strides = _strides(node.bag, self.levels)
                index = sum(
                    self.levels[u].index(chosen[u]) * s for u, s in zip(node.bag, strides)
                )
                chosen[v] = self.levels[v][self.choices[i][index]]
            stack.extend(node.children)
        return PowerAssignment(p=chosen)


def ldpvc_dp(li: ListInstance, td: Optional[NiceTreeDecomposition] = None) -> ListSolveResult:
    """
    Least total power over covers that give every vertex a level from its list.

    Args:
        li: Instance with per-vertex level lists
        td: Nice decomposition of ``li.inst``; min-fill when omitted

    Returns:
        The optimum and a witness, or an infeasible result
    """
    inst = li.inst
    if td is None:
        td = min_fill_decomposition(inst)
    if td.root < 0:
        return ListSolveResult(feasible=True, value=0, witness=PowerAssignment())
    entries = table_size(td, li.levels)
    dp = _ListDp(li, td)
    value = dp.run()
    logger.debug(
        f"List DP: width {td.width}, {len(td.nodes)} nodes, {entries} entries, value {value}"
    )
    if value is None:
        return ListSolveResult(feasible=False, table_entries=entries)
    witness = dp.reconstruct()
    if witness.value != value or not is_feasible(inst, witness):
        raise RuntimeError(f"list DP reconstruction disagrees with its table value {value}")
    return ListSolveResult(feasible=True, value=value, witness=witness, table_entries=entries)


def maxweight_levels(inst: DpvcInstance) -> Dict[int, List[int]]:
    """``{0..M(v)}`` for every vertex, M(v) being its largest own demand."""
    return {v: list(range(inst.vertex_max_demand(v) + 1)) for v in range(inst.n)}


def degree_levels(inst: DpvcInstance) -> Dict[int, List[int]]:
    """0 plus each demand on the vertex's side; at most degree + 1 levels."""
    levels = {v: candidate_levels(inst, v) for v in range(inst.n)}
    assert all(len(levels[v]) <= inst.degree(v) + 1 for v in levels)
    return levels


def _exact(
    inst: DpvcInstance, levels: Dict[int, List[int]], td: Optional[NiceTreeDecomposition]
) -> ListSolveResult:
    result = ldpvc_dp(ListInstance(inst=inst, levels=levels), td)
    if not result.feasible:
        raise RuntimeError("exact list DP found no cover")
    return result


def solve_tw_maxweight(
    inst: DpvcInstance, td: Optional[NiceTreeDecomposition] = None
) -> ListSolveResult:
    """Exact optimum with every level from 0 to the vertex's largest demand allowed."""
    return _exact(inst, maxweight_levels(inst), td)


def solve_tw_degree(
    inst: DpvcInstance, td: Optional[NiceTreeDecomposition] = None
) -> ListSolveResult:
    """Exact optimum with levels restricted to 0 and the vertex's own demands."""
    return _exact(inst, degree_levels(inst), td)


def solve_tw_exact(
    inst: DpvcInstance, td: Optional[NiceTreeDecomposition] = None
) -> ListSolveResult:
    """
    Exact optimum through whichever list construction needs the smaller tables.

    Args:
        inst: Any instance
        td: Nice decomposition; min-fill when omitted

    Returns:
        Optimal value and witness
    """
    if td is None:
        td = min_fill_decomposition(inst)
    by_weight = maxweight_levels(inst)
    by_degree = degree_levels(inst)
    if table_size(td, by_weight) < table_size(td, by_degree):
        logger.debug("Exact DP: using weight-range lists")
        return _exact(inst, by_weight, td)
    logger.debug("Exact DP: using demand lists")
    return _exact(inst, by_degree, td)
