"""Vertex and edge upper bounds for a search instance, and the prune rule."""

from __future__ import annotations

from typing import NamedTuple

from .instance import SearchInstance


class BoundTriple(NamedTuple):
    ub_left: int
    ub_right: int
    ub_edges: int


class ThresholdPair(NamedTuple):
    theta_u: int
    theta_v: int


def _cost_profile(mask: int, levels: tuple[int, ...], budget: int) -> tuple[int, list[int]]:
    """(number of zero-cost candidates, ascending positive costs that could ever fit)."""
    zeros = (mask & ~levels[0]).bit_count()
    positive: list[int] = []
    for d in range(1, budget + 1):
        c = (mask & levels[d - 1] & ~levels[d]).bit_count()
        if c:
            positive.extend([d] * min(c, budget - len(positive)))
            if len(positive) >= budget:
                break
    return zeros, positive


def _prefix(costs: list[int], room: int) -> tuple[int, int]:
    # longest prefix whose sum fits ``room``: (length, sum)
    total = 0
    n = 0
    for c in costs:
        if total + c > room:
            break
        total += c
        n += 1
    return n, total


def upper_bounds(inst: SearchInstance) -> BoundTriple:
    """Bounds on |U_D|, |V_D| and |E_D| over every k-defective extension of S within C.

    Candidates of each side are taken in ascending order of their
    non-neighbours in S. The side bounds are the longest prefixes whose costs
    fit the remaining budget; the edge bound takes, for every left prefix
    length i, the longest right prefix fitting the leftover budget. Left
    prefixes shorter than the zero-cost run can never win, so only the
    lengths past it are scanned.
    """
    g = inst.graph
    budget = inst.k - inst.ne_s
    us, vs = inst.left_size, inst.right_size
    levels = inst.levels
    C = inst.C
    zu, pu = _cost_profile(C & g.left_mask, levels, budget)
    zv, pv = _cost_profile(C >> g.n_left << g.n_left, levels, budget)
    nu, _ = _prefix(pu, budget)
    nv, _ = _prefix(pv, budget)

    ne = inst.ne_s
    best = -1
    du = 0
    for extra in range(nu + 1):
        if extra:
            du += pu[extra - 1]
        j, dv = _prefix(pv, budget - du)
        e = (us + zu + extra) * (vs + zv + j) - ne - du - dv
        if e > best:
            best = e
    return BoundTriple(us + zu + nu, vs + zv + nv, best)


def can_prune(bounds: BoundTriple, thresholds: ThresholdPair, best_edges: int) -> bool:
    return (
        bounds.ub_left < thresholds[0]
        or bounds.ub_right < thresholds[1]
        or bounds.ub_edges <= best_edges
    )
