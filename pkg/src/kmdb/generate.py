"""Synthetic bipartite graphs with power-law or normal degree profiles."""

from __future__ import annotations

import numpy as np

from .graph import BipartiteGraph

POWERLAW = "powerlaw"
NORMAL = "normal"


def _weights(rng: np.random.Generator, n: int, opposite: int, density: float, distribution: str, exponent: float) -> np.ndarray:
    if distribution == POWERLAW:
        # Pareto weights with density exponent ``exponent``
        return (1.0 - rng.random(n)) ** (-1.0 / (exponent - 1.0))
    if distribution == NORMAL:
        mean = density * opposite
        w = rng.normal(mean, mean / 4.0, n)
        return np.clip(w, 1e-3 * mean, None)
    raise ValueError(f"unknown distribution {distribution!r}")


def generate(
    n_left: int,
    n_right: int,
    density: float,
    distribution: str = POWERLAW,
    seed: int = 0,
    exponent: float = 2.5,
) -> BipartiteGraph:
    """Exactly round(density * n_left * n_right) distinct edges.

    Every vertex draws a weight from the chosen distribution and edges are
    sampled without replacement with probability proportional to the product
    of their endpoint weights.
    """
    if not 0.0 < density < 1.0:
        raise ValueError("density must lie strictly between 0 and 1")
    if n_left < 1 or n_right < 1:
        raise ValueError("both sides need at least one vertex")
    if distribution == POWERLAW and exponent <= 1.0:
        raise ValueError("power-law exponent must exceed 1")
    m = int(round(density * n_left * n_right))
    if m < 1:
        raise ValueError("density too low for a single edge")
    rng = np.random.default_rng(seed)
    wl = _weights(rng, n_left, n_right, density, distribution, exponent)
    wr = _weights(rng, n_right, n_left, density, distribution, exponent)
    p = np.outer(wl, wr).ravel()
    p /= p.sum()
    picks = rng.choice(n_left * n_right, size=m, replace=False, p=p)
    edges = [(int(x) // n_right, int(x) % n_right) for x in np.sort(picks)]
    return BipartiteGraph.from_edges(n_left, n_right, edges)


def degree_profile(g: BipartiteGraph) -> tuple[tuple[int, int], tuple[float, float]]:
    """((max left degree, max right degree), (mean left degree, mean right degree))."""
    dl = [len(a) for a in g.adj_left]
    dr = [len(a) for a in g.adj_right]
    return (max(dl, default=0), max(dr, default=0)), (
        g.m / g.n_left if g.n_left else 0.0,
        g.m / g.n_right if g.n_right else 0.0,
    )
