from __future__ import annotations

import pytest

from dagrta.graph import add_edge, build_dag

# 6-vertex canonical fixture: two WCET profiles over the same topology.
# All paper-stated quantities (vol, len, left/right lengths, residues,
# bounds, allocations) are pinned against these two graphs.
EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5), (4, 5)]
E1_WCETS = (1, 3, 1, 3, 1, 1)
E2_WCETS = (1, 3, 2, 3, 1, 1)


def make_graph(wcets, edges=EDGES):
    return build_dag(list(enumerate(wcets)), edges)


@pytest.fixture
def e1():
    return make_graph(E1_WCETS)


@pytest.fixture
def e2():
    return make_graph(E2_WCETS)


@pytest.fixture
def e1_prime(e1):
    """E1 plus the bound-preserving edge (2, 3)."""
    return add_edge(e1, 2, 3)


@pytest.fixture
def chain():
    """5-vertex chain: longest path equals the volume."""
    return build_dag(list(enumerate((2, 4, 1, 3, 5))),
                     [(0, 1), (1, 2), (2, 3), (3, 4)])
