"""
Gen command: build instances of each generator family.
"""

import itertools
import logging
import random
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from power_cover.core.instance import DpvcInstance
from power_cover.generators.gadgets import (
    McisInstance,
    PartVertex,
    gen_clique_reduction,
    gen_lp_gap,
    gen_tw_hardness,
    gen_zero_vertex,
)
from power_cover.generators.random_graphs import gen_random, gen_random_vc_graph

logger = logging.getLogger(__name__)

FAMILIES = ["random", "clique", "tw-hardness", "zero-vertex", "lp-gap"]


class GenRequest(BaseModel):
    """Parameters for one generated instance; each family reads the ones it needs."""

    family: str
    n: int = 6
    m: int = 6
    w_max: int = 5
    directed: bool = False
    seed: Optional[int] = None
    K: int = 2
    apx: bool = False
    parts: int = 2
    strict: bool = False
    cross_edges: List[str] = Field(default_factory=list)


class Generated(BaseModel):
    instance: DpvcInstance
    comment: str
    target: Optional[int] = None


def parse_cross_edge(text: str) -> Tuple[PartVertex, PartVertex]:
    """Parse ``c:i-d:j`` (1-based part and index)."""
    try:
        left, right = text.split("-")
        c, i = (int(x) for x in left.split(":"))
        d, j = (int(x) for x in right.split(":"))
    except ValueError:
        raise ValueError(f"cross edge must look like 1:2-2:1, got {text!r}") from None
    return (c, i), (d, j)


def random_cross_edges(
    parts: int, n: int, m: int, seed: Optional[int]
) -> List[Tuple[PartVertex, PartVertex]]:
    """``m`` distinct edges between different parts, sampled uniformly."""
    vertices = [(c, i) for c in range(1, parts + 1) for i in range(1, n + 1)]
    pairs = [(a, b) for a, b in itertools.combinations(vertices, 2) if a[0] != b[0]]
    if m > len(pairs):
        raise ValueError(f"only {len(pairs)} cross edges exist for {parts} parts of {n}")
    return sorted(random.Random(seed).sample(pairs, m))


def generate(request: GenRequest) -> Generated:
    """
    Build the instance ``request`` describes.

    Raises:
        ValueError: On an unknown family or infeasible parameters
    """
    family = request.family
    if family == "random":
        inst = gen_random(request.n, request.m, request.w_max, request.directed, request.seed)
        kind = "dpvc" if request.directed else "pvc"
        comment = (
            f"random {kind} n={request.n} m={request.m} w_max={request.w_max} seed={request.seed}"
        )
        return Generated(instance=inst, comment=comment)
    if family in ("clique", "zero-vertex"):
        g = gen_random_vc_graph(request.n, request.m, request.seed)
        source = f"n={g.n} m={len(g.edges)} seed={request.seed}"
        if family == "clique":
            inst = gen_clique_reduction(g, request.K, apx=request.apx)
            weight = "n^2" if request.apx else str(request.K)
            return Generated(instance=inst, comment=f"clique reduction K={weight} of {source}")
        return Generated(instance=gen_zero_vertex(g), comment=f"zero-vertex gadget of {source}")
    if family == "tw-hardness":
        edges: Sequence[Tuple[PartVertex, PartVertex]]
        if request.cross_edges:
            edges = [parse_cross_edge(text) for text in request.cross_edges]
        else:
            edges = random_cross_edges(request.parts, request.n, request.m, request.seed)
        source = McisInstance(k=request.parts, n=request.n, edges=list(edges))
        inst, target = gen_tw_hardness(source, strict=request.strict)
        variant = "strict" if request.strict else "literal"
        comment = (
            f"tw-hardness {variant} k={source.k} n={source.n} cross edges={len(source.edges)}\n"
            f"target {target}"
        )
        return Generated(instance=inst, comment=comment, target=target)
    if family == "lp-gap":
        return Generated(instance=gen_lp_gap(), comment="lp-gap example")
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
