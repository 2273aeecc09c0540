"""
Seeded random instances for power-cover.
"""

import logging
import random
from typing import Optional

import networkx as nx

from power_cover.core.instance import DpvcInstance, Edge
from power_cover.generators.gadgets import VcInstance

logger = logging.getLogger(__name__)


def _check_size(n: int, m: int) -> None:
    if n < 0 or m < 0:
        raise ValueError(f"n and m must be non-negative, got n={n}, m={m}")
    if m > n * (n - 1) // 2:
        raise ValueError(f"{m} edges do not fit a simple graph on {n} vertices")


def gen_random(
    n: int, m: int, w_max: int, directed: bool = False, seed: Optional[int] = None
) -> DpvcInstance:
    """
    Uniform simple graph with ``m`` edges and demands uniform in ``[1, w_max]``.

    Args:
        n: Vertex count
        m: Edge count, at most n(n-1)/2
        w_max: Largest demand
        directed: Draw the two demands of an edge independently
        seed: Seed; equal seeds give equal instances

    Returns:
        The instance, symmetric unless ``directed``

    Raises:
        ValueError: If the sizes are infeasible or ``w_max < 1``
    """
    _check_size(n, m)
    if w_max < 1:
        raise ValueError(f"w_max must be at least 1, got {w_max}")
    rng = random.Random(seed)
    graph = nx.gnm_random_graph(n, m, seed=rng.randrange(2**32))
    edges = []
    for u, v in sorted((min(a, b), max(a, b)) for a, b in graph.edges):
        w_uv = rng.randint(1, w_max)
        w_vu = rng.randint(1, w_max) if directed else w_uv
        edges.append(Edge(u, v, w_uv, w_vu))
    logger.debug(f"Random instance n={n}, m={m}, w_max={w_max}, directed={directed}, seed={seed}")
    return DpvcInstance(n=n, edges=edges)


def gen_random_vc_graph(n: int, m: int, seed: Optional[int] = None) -> VcInstance:
    """Uniform simple graph with ``m`` edges, as a vertex cover input."""
    _check_size(n, m)
    graph = nx.gnm_random_graph(n, m, seed=seed)
    return VcInstance(n=n, edges=sorted((min(a, b), max(a, b)) for a, b in graph.edges))
