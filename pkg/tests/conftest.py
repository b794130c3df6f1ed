import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from uksat.hypercore import UniformHypergraph, k_subsets


def cycle_graph(n):
    return UniformHypergraph.from_edges(n, 2, [(i, i % n + 1) for i in range(1, n + 1)])


def petersen_graph():
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    inner = [(5 + i, 5 + (i + 1) % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    return UniformHypergraph.from_edges(10, 2, outer + inner + spokes)


def clique_join_independent(n, r):
    """K_{r-2} joined to an independent set on the remaining n - r + 2 vertices."""
    core = range(1, r - 1)
    edges = [(a, b) for a in core for b in range(a + 1, n + 1)]
    return UniformHypergraph.from_edges(n, 2, edges)


def random_hypergraph(rng, n, k, p=None):
    p = rng.random() if p is None else p
    return UniformHypergraph(n, k, tuple(e for e in k_subsets(n, k) if rng.random() < p))


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def rng():
    return random.Random(20240611)
