"""
Reduction gadgets for power-cover.

Each constructor builds a symmetric instance from a combinatorial source
problem so that optimal power values track the source optimum.
"""

import itertools
import logging
from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator

from power_cover.core.instance import DpvcInstance, Edge

logger = logging.getLogger(__name__)

PartVertex = Tuple[int, int]


class VcInstance(BaseModel):
    """Unweighted simple graph on ``0..n-1``."""

    n: int = Field(ge=0)
    edges: List[Tuple[int, int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _simple(self) -> "VcInstance":
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"invalid edge ({u}, {v}) for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        return self


class McisInstance(BaseModel):
    """
    Multicolored independent set input.

    ``k`` parts of ``n`` vertices each; a vertex is addressed as
    ``(part, index)`` with ``1 ≤ part ≤ k`` and ``1 ≤ index ≤ n``. Only edges
    between different parts are stored.
    """

    k: int = Field(ge=1)
    n: int = Field(ge=1)
    edges: List[Tuple[PartVertex, PartVertex]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _cross_edges(self) -> "McisInstance":
        for a, b in self.edges:
            for part, index in (a, b):
                if not (1 <= part <= self.k and 1 <= index <= self.n):
                    raise ValueError(f"vertex ({part}, {index}) outside {self.k} parts of {self.n}")
            if a[0] == b[0]:
                raise ValueError(f"edge {a}-{b} lies inside part {a[0]}")
        return self

    def has_independent_set(self) -> bool:
        """True iff one vertex per part can be picked with no edge among the picks."""
        conflicts = {frozenset(edge) for edge in self.edges}
        for pick in itertools.product(range(1, self.n + 1), repeat=self.k):
            chosen = [(part + 1, index) for part, index in enumerate(pick)]
            if not any(
                frozenset((a, b)) in conflicts for a, b in itertools.combinations(chosen, 2)
            ):
                return True
        return False


def gen_clique_reduction(g: VcInstance, K: int = 2, apx: bool = False) -> DpvcInstance:
    """
    Complete graph that prices a vertex cover of ``g``.

    Edges of ``g`` get weight ``K``, missing pairs weight 1, and a new vertex
    ``v0 = g.n`` joins every vertex with weight 1. A vertex cover of size k
    gives power ``g.n + (K-1)·k``, so ``g.n + k`` when K = 2.

    Args:
        g: Vertex cover input
        K: Weight on the edges of ``g``, at least 2
        apx: Use ``K = n²`` instead

    Returns:
        Symmetric instance on ``g.n + 1`` vertices
    """
    if apx:
        K = max(2, g.n * g.n)
    if K < 2:
        raise ValueError(f"K must be at least 2, got {K}")
    present = {(min(u, v), max(u, v)) for u, v in g.edges}
    edges = [
        Edge(u, v, K, K) if (u, v) in present else Edge(u, v, 1, 1)
        for u, v in itertools.combinations(range(g.n), 2)
    ]
    edges.extend(Edge(v, g.n, 1, 1) for v in range(g.n))
    return DpvcInstance(n=g.n + 1, edges=edges)


def gen_zero_vertex(g: VcInstance) -> DpvcInstance:
    """
    Subdivide every edge of ``g`` twice.

    Edge number ``e = (u, v)`` becomes the path ``u - v'_e - v''_e - v`` with
    weights 1, 2, 1, where ``v'_e = g.n + 2e`` and ``v''_e = g.n + 2e + 1``.
    """
    edges: List[Edge] = []
    for e, (u, v) in enumerate(g.edges):
        near, far = g.n + 2 * e, g.n + 2 * e + 1
        edges.append(Edge(u, near, 1, 1))
        edges.append(Edge(near, far, 2, 2))
        edges.append(Edge(far, v, 1, 1))
    return DpvcInstance(n=g.n + 2 * len(g.edges), edges=edges)


def gen_lp_gap() -> DpvcInstance:
    """Two weight-2 edges and a hub joined to their four endpoints with weight 1."""
    return DpvcInstance.from_edges(
        5,
        [(0, 1, 2), (2, 3, 2), (4, 0, 1), (4, 1, 1), (4, 2, 1), (4, 3, 1)],
    )


def tw_hardness_target(m: McisInstance, strict: bool = False) -> int:
    """Optimum of the hardness instance when an independent set exists."""
    checker = m.n + 1 if strict else m.n
    return m.k * (m.n * m.n + m.n) + 3 * len(m.edges) * checker


def gen_tw_hardness(m: McisInstance, strict: bool = False) -> Tuple[DpvcInstance, int]:
    """
    Bounded-treewidth instance encoding a multicolored independent set.

    Vertex numbering, with ``B = 2n + 2``:

    - part ``c`` (1-based) owns ``u_c = (c-1)·B``, ``u'_c = (c-1)·B + 1``,
      ``a_i = (c-1)·B + 2i`` and ``b_i = (c-1)·B + 2i + 1`` for ``i = 1..n``;
    - checker ``e`` (0-based, in edge order) owns ``k·B + 4e .. k·B + 4e + 3``;
    - with ``strict``, part ``c`` also gets a guard at ``k·B + 4|E| + c - 1``.

    A choice gadget has ``a_i - b_i`` of weight n, ``u_c - a_i`` of weight i
    and ``u'_c - b_i`` of weight n + 1 - i. A checker for the edge
    ``(c, i) - (d, j)`` is a K4 of weight n whose corners attach to
    ``u_c, u'_c, u_d, u'_d`` with weights i + 1, n - i + 1, j + 1, n - j + 1.

    ``strict`` raises the K4 weight to n + 1 and attaches a weight-1 guard to
    every ``u_c``, which makes the optimum equal the target exactly when an
    independent set exists.

    Returns:
        The instance and its target value
    """
    n, k = m.n, m.k
    block = 2 * n + 2
    edges: List[Edge] = []
    for c in range(k):
        u, u_prime = c * block, c * block + 1
        for i in range(1, n + 1):
            a, b = c * block + 2 * i, c * block + 2 * i + 1
            edges.append(Edge(a, b, n, n))
            edges.append(Edge(u, a, i, i))
            edges.append(Edge(u_prime, b, n + 1 - i, n + 1 - i))

    k4 = n + 1 if strict else n
    base = k * block
    for e, ((c, i), (d, j)) in enumerate(m.edges):
        corners = [base + 4 * e + t for t in range(4)]
        edges.extend(Edge(x, y, k4, k4) for x, y in itertools.combinations(corners, 2))
        links = [
            ((c - 1) * block, i + 1),
            ((c - 1) * block + 1, n - i + 1),
            ((d - 1) * block, j + 1),
            ((d - 1) * block + 1, n - j + 1),
        ]
        edges.extend(Edge(choice, q, w, w) for (choice, w), q in zip(links, corners))

    total = base + 4 * len(m.edges)
    if strict:
        for c in range(k):
            edges.append(Edge(c * block, total + c, 1, 1))
        total += k
    target = tw_hardness_target(m, strict)
    logger.debug(f"Hardness instance: k={k}, n={n}, {len(m.edges)} checkers, target {target}")
    return DpvcInstance(n=total, edges=edges), target
