"""Exhaustive reference solvers for small graphs.

These share nothing with the search code beyond the graph type and are used to
produce ground truth for tests.
"""

from __future__ import annotations

from itertools import combinations

from .graph import BipartiteGraph
from .solution import Solution


class OracleTooLarge(ValueError):
    pass


def _right_masks(g: BipartiteGraph) -> list[int]:
    # neighbourhood of each right vertex as a bitmask over left indices
    out = []
    for nbrs in g.adj_right:
        m = 0
        for u in nbrs:
            m |= 1 << u
        out.append(m)
    return out


def brute_force_mdb(g: BipartiteGraph, k: int, theta: int, max_side: int = 20) -> Solution | None:
    """Maximum-edge k-defective biclique with both sides >= theta, by enumeration.

    Every left subset of size >= theta is tried; for a fixed left subset and a
    fixed right size s the best right set is the s vertices with the fewest
    non-neighbours in it. The smaller side is enumerated.
    """
    if g.n_right < g.n_left:
        sol = brute_force_mdb(g.swapped(), k, theta, max_side)
        return None if sol is None else sol.swapped()
    if g.n_left > max_side:
        raise OracleTooLarge(f"smaller side has {g.n_left} vertices (limit {max_side})")
    rmask = _right_masks(g)
    best: Solution | None = None
    for size in range(theta, g.n_left + 1):
        for left in combinations(range(g.n_left), size):
            lm = 0
            for u in left:
                lm |= 1 << u
            misses = sorted((size - (rmask[v] & lm).bit_count(), v) for v in range(g.n_right))
            total = 0
            s = 0
            for miss, _ in misses:
                if total + miss > k:
                    break
                total += miss
                s += 1
            if s < theta:
                continue
            edges = size * s - total
            if best is None or edges > best.edges:
                best = Solution(frozenset(left), frozenset(v for _, v in misses[:s]), edges)
    return best


def naive_mdb(g: BipartiteGraph, k: int, theta: int, max_n: int = 10) -> Solution | None:
    """Second oracle: both power sets, no shortcuts."""
    if g.n > max_n:
        raise OracleTooLarge(f"{g.n} vertices (limit {max_n})")
    rmask = _right_masks(g)
    best = None
    for lm in range(1 << g.n_left):
        a = lm.bit_count()
        if a < theta:
            continue
        for vm in range(1 << g.n_right):
            b = vm.bit_count()
            if b < theta:
                continue
            edges = sum((rmask[v] & lm).bit_count() for v in range(g.n_right) if vm >> v & 1)
            if a * b - edges <= k and (best is None or edges > best.edges):
                best = Solution(
                    frozenset(u for u in range(g.n_left) if lm >> u & 1),
                    frozenset(v for v in range(g.n_right) if vm >> v & 1),
                    edges,
                )
    return best


def best_extension(
    g: BipartiteGraph,
    k: int,
    partial: tuple[list[int], list[int]],
    candidates: tuple[list[int], list[int]],
    thresholds: tuple[int, int] = (0, 0),
    max_candidates: int = 16,
) -> tuple[int, int, int, int]:
    """Exhaustive facts about the k-defective bicliques D with S <= D <= S u C.

    Returns (max |U_D|, max |V_D|, max |E_D|, max |E_D| over D meeting
    ``thresholds``); -1 where no such D exists.
    """
    us, vs = partial
    uc, vc = candidates
    if len(uc) + len(vc) > max_candidates:
        raise OracleTooLarge("too many candidates")
    rmask = _right_masks(g)
    best_l = best_r = best_e = best_t = -1
    for r in range(len(uc) + 1):
        for extra in combinations(uc, r):
            left = list(us) + list(extra)
            lm = 0
            for u in left:
                lm |= 1 << u
            a = len(left)
            base = sum(a - (rmask[v] & lm).bit_count() for v in vs)
            if base > k:
                continue
            best_l = max(best_l, a)
            misses = sorted(a - (rmask[v] & lm).bit_count() for v in vc)
            total = base
            b = len(vs)
            e = a * b - base
            best_e = max(best_e, e)
            if a >= thresholds[0] and b >= thresholds[1]:
                best_t = max(best_t, e)
            for miss in misses:
                if total + miss > k:
                    break
                total += miss
                b += 1
                e = a * b - total
                best_e = max(best_e, e)
                if a >= thresholds[0] and b >= thresholds[1]:
                    best_t = max(best_t, e)
            best_r = max(best_r, b)
    return best_l, best_r, best_e, best_t
