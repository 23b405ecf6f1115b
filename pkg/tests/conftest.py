import sys
import random

import pytest
from hypothesis import strategies as st

from kmdb import BipartiteGraph


def g1() -> BipartiteGraph:
    """2x2 graph missing the edge (u1, v1)."""
    return BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 1), (1, 0)])


def k33_minus_matching() -> BipartiteGraph:
    return BipartiteGraph.from_edges(3, 3, [(u, v) for u in range(3) for v in range(3) if u != v])


def random_graph(rng: random.Random, n_left: int, n_right: int, density: float) -> BipartiteGraph:
    edges = [(u, v) for u in range(n_left) for v in range(n_right) if rng.random() < density]
    return BipartiteGraph.from_edges(n_left, n_right, edges)


@st.composite
def graphs(draw, max_left=6, max_right=6, min_side=0):
    nl = draw(st.integers(min_side, max_left))
    nr = draw(st.integers(min_side, max_right))
    bits = draw(st.lists(st.booleans(), min_size=nl * nr, max_size=nl * nr))
    edges = [(i // nr, i % nr) for i, b in enumerate(bits) if b]
    return BipartiteGraph.from_edges(nl, nr, edges)


@st.composite
def problems(draw, max_side=6, max_k=3, max_theta=4):
    g = draw(graphs(max_side, max_side))
    k = draw(st.integers(0, max_k))
    theta = draw(st.integers(k + 1, max(k + 1, max_theta)))
    return g, k, theta


@pytest.fixture
def G1():
    return g1()


@pytest.fixture
def K33M():
    return k33_minus_matching()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS, key=str):
        terminalreporter.write_line(mod.RESULTS[n])
