import pytest
from hypothesis import given, settings

from kmdb import BipartiteGraph, brute_force_mdb, greedy_initial, validate

from conftest import g1, k33_minus_matching, problems


@pytest.mark.parametrize("theta,k", [(2, 0), (3, 1), (4, 3)])
def test_complete_graph_taken_whole(theta, k):
    sol = greedy_initial(BipartiteGraph.complete(theta, theta), k, theta)
    assert sol.edges == theta * theta
    assert len(sol.left) == len(sol.right) == theta


def test_g1_reaches_optimum():
    sol = greedy_initial(g1(), 1, 2)
    assert sol.left == {0, 1} and sol.right == {0, 1} and sol.edges == 3


def test_k33m_k0_none():
    assert greedy_initial(k33_minus_matching(), 0, 2) is None


def test_rejects_theta_not_above_k():
    with pytest.raises(ValueError):
        greedy_initial(g1(), 2, 2)


@settings(max_examples=300, deadline=None)
@given(problems())
def test_valid_and_never_above_optimum(p):
    g, k, theta = p
    sol = greedy_initial(g, k, theta)
    if sol is None:
        return
    assert len(sol.left) * len(sol.right) - sol.edges <= k
    assert min(len(sol.left), len(sol.right)) >= theta
    assert sol.edges == g.edge_count(sol.left, sol.right)
    best = brute_force_mdb(g, k, theta)
    assert best is not None and sol.edges <= best.edges
