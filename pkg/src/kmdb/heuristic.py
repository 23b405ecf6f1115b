"""Greedy seed: grow one side to exactly theta vertices while trimming the other."""

from __future__ import annotations

from .graph import BipartiteGraph
from .solution import Solution


def _one_side(g: BipartiteGraph, k: int, theta: int) -> tuple[list[int], set[int], int] | None:
    if g.n_left < theta:
        return None
    chosen: list[int] = []
    in_u = [False] * g.n_left
    kept = set(range(g.n_right))
    # miss[v] = non-neighbours of v among chosen
    miss = [0] * g.n_right
    non_edges = 0
    adj = [set(a) for a in g.adj_left]
    while len(chosen) < theta:
        if not kept:
            return None
        u = max(
            (w for w in range(g.n_left) if not in_u[w]),
            key=lambda w: (len(adj[w] & kept), -w),
        )
        nu = adj[u]
        for v in kept:
            if v not in nu:
                miss[v] += 1
                non_edges += 1
        while non_edges > k:
            v = max(kept, key=lambda x: (miss[x], -x))
            kept.discard(v)
            non_edges -= miss[v]
        if not kept:
            return None
        chosen.append(u)
        in_u[u] = True
    if len(kept) < theta:
        return None
    return chosen, kept, len(chosen) * len(kept) - non_edges


def greedy_initial(g: BipartiteGraph, k: int, theta: int) -> Solution | None:
    """A large k-defective biclique with one side of exactly theta vertices, or None.

    Runs once with the left side grown and once with the sides swapped,
    keeping the larger result (the first on ties).
    """
    if not theta > k >= 0:
        raise ValueError("theta must be greater than k")
    best = None
    a = _one_side(g, k, theta)
    if a is not None:
        best = Solution(frozenset(a[0]), frozenset(a[1]), a[2])
    b = _one_side(g.swapped(), k, theta)
    if b is not None and (best is None or b[2] > best.edges):
        best = Solution(frozenset(b[1]), frozenset(b[0]), b[2])
    return best
