"""Graph and instance reductions: common-neighbour edge pruning, one-non-neighbour
pruning, ordering-based seeding, progressive size thresholds and the per-seed
candidate filter."""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .bounds import ThresholdPair
from .graph import BipartiteGraph, iter_bits
from .instance import SearchInstance


def _bump(stats: dict | None, key: str, n: int) -> None:
    if stats is not None and n:
        stats[key] = stats.get(key, 0) + n


def cn_reduce(
    g: BipartiteGraph,
    k: int,
    theta: int,
    fixpoint: bool = False,
    stats: dict | None = None,
) -> BipartiteGraph:
    """Drop edges (u, v) where v has fewer than theta-k neighbours w with cn(u, w) >= theta-k.

    One sweep over all vertices in ascending degree order (both sides). After
    a vertex's edges are checked, it and any of its neighbours whose degree
    fell below theta-k lose all remaining edges. Vertex indices are kept, so
    removed vertices stay behind as isolated ones. ``fixpoint`` repeats the
    sweep until nothing changes.
    """
    if not theta > k >= 0:
        raise ValueError("need theta > k >= 0")
    t = theta - k
    nl = g.n_left
    adj: list[set[int]] = [{nl + v for v in nbrs} for nbrs in g.adj_left]
    adj += [set(nbrs) for nbrs in g.adj_right]
    n_edges = n_vertices = 0

    def clear(x: int) -> int:
        for y in adj[x]:
            adj[y].discard(x)
        n = len(adj[x])
        adj[x].clear()
        return n

    while True:
        before = n_edges
        for u in sorted(range(g.n), key=lambda x: (len(adj[x]), x)):
            nu = adj[u]
            if not nu:
                continue
            cn: dict[int, int] = {}
            for v in nu:
                for w in adj[v]:
                    cn[w] = cn.get(w, 0) + 1
            touched = list(nu)
            for v in touched:
                support = 0
                for w in adj[v]:
                    if cn.get(w, 0) >= t:
                        support += 1
                        if support >= t:
                            break
                if support < t:
                    nu.discard(v)
                    adj[v].discard(u)
                    n_edges += 1
            if 0 < len(nu) < t:
                n_edges += clear(u)
                n_vertices += 1
            for v in touched:
                if 0 < len(adj[v]) < t:
                    n_edges += clear(v)
                    n_vertices += 1
        if not fixpoint or n_edges == before:
            break
    _bump(stats, "cnred_edges", n_edges)
    _bump(stats, "cnred_vertices", n_vertices)
    if not n_edges:
        return g
    edges = [(u, v - nl) for u in range(nl) for v in adj[u]]
    return BipartiteGraph.from_edges(g.n_left, g.n_right, edges, g.label_offset)


def one_non_neighbor_prune(inst: SearchInstance, removed: int, stats: dict | None = None) -> list[int]:
    """Extra candidate removals after ``removed`` was excluded from C.

    Applies only when ``removed`` had exactly one non-neighbour in S u C at
    the moment it was excluded (removing it changes neither count). Then
    every same-side candidate with a non-neighbour in S goes, and if the
    unique non-neighbour w is itself a candidate, so does N̄_C(w). The caller
    owns rollback: undoing the exclusion token also undoes these removals.
    """
    x = removed if isinstance(removed, int) else inst.graph.gid(removed)
    if (inst.C >> x) & 1 or (inst.S >> x) & 1:
        return []
    g = inst.graph
    nx = g.nonadj_masks[x]
    in_c = inst.C & nx
    if (inst.S & nx).bit_count() + in_c.bit_count() != 1:
        return []
    same = g.left_mask if x < g.n_left else g.right_mask
    doomed = inst.C & same & inst.levels[0]
    if in_c:
        doomed |= inst.C & g.nonadj_masks[in_c.bit_length() - 1]
    out = list(iter_bits(doomed))
    if doomed:
        inst.remove_candidates(doomed)
    _bump(stats, "onn", len(out))
    return out


# -- ordering-based seeding -------------------------------------------------------


def descending_degree_order(g: BipartiteGraph) -> list[int]:
    return sorted(range(g.n_left), key=lambda u: (-len(g.adj_left[u]), u))


def red_i(
    candidates: tuple[list[int], list[int]],
    u: int,
    thresholds: ThresholdPair,
    k: int,
    g: BipartiteGraph,
) -> tuple[list[int], list[int]]:
    """Keep left candidates sharing >= theta_v-k neighbours with seed ``u`` and
    right candidates of degree >= theta_u-k."""
    cut_left = thresholds[1] - k
    cut_right = thresholds[0] - k
    nbr_u = set(g.adj_left[u])
    left = [w for w in candidates[0] if sum(1 for v in g.adj_left[w] if v in nbr_u) >= cut_left]
    right = [v for v in candidates[1] if len(g.adj_right[v]) >= cut_right]
    return left, right


class Seed(NamedTuple):
    instance: SearchInstance
    excluded: tuple[int, ...]
    seed: int


def ordering_instances(
    g: BipartiteGraph,
    k: int,
    thresholds: ThresholdPair | None = None,
    order: list[int] | None = None,
    stats: dict | None = None,
) -> Iterator[Seed]:
    """One instance per left vertex u_i in descending-degree order.

    S_i = ({u_i}, {}), C_i = (later 2-hop neighbours of u_i, N(u_i) plus their
    neighbourhoods). Earlier seeds are excluded by construction. When
    ``thresholds`` is given the candidates are first filtered by ``red_i``.
    """
    if order is None:
        order = descending_degree_order(g)
    pos = [0] * g.n_left
    for p, u in enumerate(order):
        pos[u] = p
    for i, u in enumerate(order):
        two_hop = set()
        for v in g.adj_left[u]:
            for w in g.adj_right[v]:
                if pos[w] > i:
                    two_hop.add(w)
        right = set(g.adj_left[u])
        for w in two_hop:
            right.update(g.adj_left[w])
        cand = (sorted(two_hop), sorted(right))
        if thresholds is not None:
            kept = red_i(cand, u, thresholds, k, g)
            _bump(stats, "redi", len(cand[0]) + len(cand[1]) - len(kept[0]) - len(kept[1]))
            cand = kept
        inst = SearchInstance(g, k, candidates=g.join_mask(*cand), partial=1 << u)
        yield Seed(inst, tuple(order[:i]), u)


# -- progressive bounding -----------------------------------------------------------


def initial_theta_u(g: BipartiteGraph, k: int) -> int:
    """Upper bound on |U_D|: each right vertex of D misses at most k left partners."""
    max_dv = max((len(a) for a in g.adj_right), default=0)
    return min(g.n_left, max_dv + k)


def progressive_thresholds(prev: ThresholdPair, best_edges: int, theta: int) -> ThresholdPair | None:
    """Next round's thresholds, or None once the previous round ran at theta.

    theta_v is derived from the previous theta_u before it is halved.
    """
    tu = prev[0]
    if tu <= theta:
        return None
    return ThresholdPair(max(theta, tu // 2), max(theta, best_edges // tu))
