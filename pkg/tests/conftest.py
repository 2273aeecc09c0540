"""
Shared fixtures for power-cover tests.
"""

import random
from typing import List

import pytest

from power_cover.core.instance import DpvcInstance
from power_cover.generators import gen_lp_gap, gen_random


def random_corpus(
    count: int, n_max: int, m_max: int, w_max: int, directed: bool, seed: int
) -> List[DpvcInstance]:
    """Deterministic list of small random instances of varying size."""
    rng = random.Random(seed)
    corpus = []
    for _ in range(count):
        n = rng.randint(2, n_max)
        m = rng.randint(0, min(m_max, n * (n - 1) // 2))
        corpus.append(gen_random(n, m, w_max, directed=directed, seed=rng.randrange(2**31)))
    return corpus


@pytest.fixture
def make_corpus():
    return random_corpus


@pytest.fixture
def lp_gap() -> DpvcInstance:
    return gen_lp_gap()


@pytest.fixture
def single_edge() -> DpvcInstance:
    """One edge of demand 5."""
    return DpvcInstance.from_edges(2, [(0, 1, 5)])


@pytest.fixture
def triangle() -> DpvcInstance:
    return DpvcInstance.from_edges(3, [(0, 1, 3), (1, 2, 2), (0, 2, 1)])


@pytest.fixture
def directed_path() -> DpvcInstance:
    """Path 0-1-2-3 with different demands on the two sides of each edge."""
    return DpvcInstance.from_edges(4, [(0, 1, 1, 4), (1, 2, 3, 2), (2, 3, 5, 1)])


@pytest.fixture(scope="session")
def pvc_corpus() -> List[DpvcInstance]:
    return random_corpus(60, n_max=8, m_max=12, w_max=5, directed=False, seed=11)


@pytest.fixture(scope="session")
def dpvc_corpus() -> List[DpvcInstance]:
    return random_corpus(60, n_max=7, m_max=10, w_max=5, directed=True, seed=23)


@pytest.fixture
def write_text(tmp_path):
    """Write ``text`` to ``tmp_path/name`` and return the path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write
