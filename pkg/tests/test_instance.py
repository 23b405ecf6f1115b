import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmdb import BipartiteGraph, BranchKind, ContractError, SearchInstance

from conftest import g1, graphs, k33_minus_matching


class Shadow:
    """Copy-based model of the search state, everything recomputed from sets."""

    def __init__(self, g, k, S=(), C=None):
        self.g, self.k = g, k
        self.S = set(S)
        self.C = set(range(g.n)) - self.S if C is None else set(C)

    def nonadj(self, x):
        return set(self.g.split_mask(self.g.nonadj_masks[x])[0]) | {
            self.g.n_left + v for v in self.g.split_mask(self.g.nonadj_masks[x])[1]
        }

    def nd(self, x, where):
        return len(self.nonadj(x) & where)

    def ne(self):
        nl = self.g.n_left
        return sum(self.nd(x, self.S) for x in self.S if x < nl)

    def add(self, u):
        self.C.discard(u)
        self.S.add(u)
        budget = self.k - self.ne()
        self.C = {v for v in self.C if self.nd(v, self.S) <= budget}
        zero = {v for v in self.C if self.nd(v, self.S) == 0 and self.nd(v, self.C) == 0}
        self.C -= zero
        self.S |= zero

    def copy(self):
        return Shadow(self.g, self.k, self.S, self.C)


def members(g, mask):
    left, right = g.split_mask(mask)
    return set(left) | {g.n_left + v for v in right}


def assert_same(inst, sh):
    g = inst.graph
    assert members(g, inst.S) == sh.S
    assert members(g, inst.C) == sh.C
    assert inst.ne_s == sh.ne()
    for x in range(g.n):
        assert inst.nd_s(x) == sh.nd(x, sh.S)
        assert inst.nd_c(x) == sh.nd(x, sh.C)
    inst.check()


def test_new_root_examples():
    r = SearchInstance.new_root(BipartiteGraph.complete(2, 2), 1)
    assert r.C.bit_count() == 4 and r.S == 0 and r.ne_s == 0
    e = SearchInstance.new_root(BipartiteGraph.from_edges(0, 0, []), 1)
    assert e.S == 0 and e.C == 0
    m = SearchInstance.new_root(k33_minus_matching(), 1)
    assert all(m.nd_c(x) == 1 for x in range(6))


def test_update_complete_absorbs_everything():
    inst = SearchInstance.new_root(BipartiteGraph.complete(2, 2), 0)
    inst.update_after_add(0)
    assert inst.C == 0 and inst.edges == 4


def test_update_g1_k0():
    g = g1()
    inst = SearchInstance.new_root(g, 0)
    inst.update_after_add(1)
    assert inst.partial == ([0, 1], [0])
    assert inst.C == 0 and inst.edges == 2


def test_update_g1_k1():
    g = g1()
    inst = SearchInstance.new_root(g, 1)
    inst.update_after_add(1)
    assert inst.partial == ([0, 1], [0])
    assert inst.candidate == ([], [1])
    assert_same(inst, Shadow(g, 1, {0, 1, 2}, {3}))


def test_update_precondition_errors():
    g = g1()
    inst = SearchInstance.new_root(g, 0)
    inst.update_after_add(1)
    with pytest.raises(ContractError):
        inst.update_after_add(1)
    with pytest.raises(ContractError):
        inst.remove_candidate(0)


def test_rollback_identity_and_lifo():
    g = k33_minus_matching()
    inst = SearchInstance.new_root(g, 2)
    root = inst.state()
    t1 = inst.update_after_add(0)
    mid = inst.state()
    t2 = inst.remove_candidate(inst.C.bit_length() - 1)
    inst.rollback(t2)
    assert inst.state() == mid
    inst.rollback(t1)
    assert inst.state() == root
    with pytest.raises(ContractError):
        inst.rollback(t1)


def test_out_of_order_rollback_rejected():
    inst = SearchInstance.new_root(k33_minus_matching(), 2)
    t1 = inst.remove_candidate(0)
    inst.rollback(t1)
    with pytest.raises(ContractError):
        inst.rollback(t1 + 1)


def test_remove_decrements_nd_c():
    g = k33_minus_matching()
    inst = SearchInstance.new_root(g, 1)
    v0 = g.n_left
    assert inst.nd_c(v0) == 1
    inst.remove_candidate(0)
    assert inst.nd_c(v0) == 0


def test_binary_selection_examples():
    inst = SearchInstance.new_root(k33_minus_matching(), 1)
    assert inst.select_binary_branching_vertex() == 0
    full = SearchInstance.new_root(BipartiteGraph.complete(2, 3), 1)
    assert full.select_binary_branching_vertex() == 0
    with pytest.raises(ContractError):
        SearchInstance(BipartiteGraph.complete(1, 1), 1, candidates=0).select_binary_branching_vertex()


def test_binary_picks_max_nd_s():
    # S = ({u0}, {v0}); v2 misses u0, the other candidates miss nothing in S
    g = BipartiteGraph.from_edges(2, 3, [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2)])
    inst = SearchInstance(g, 1, partial=g.join_mask([0], [0]))
    assert inst.nd_s(g.n_left + 2) == 1
    assert inst.select_binary_branching_vertex() == g.n_left + 2


def test_pivot_examples():
    full = SearchInstance.new_root(BipartiteGraph.complete(2, 2), 1)
    plan = full.select_pivot_branching()
    assert plan.kind is BranchKind.PIVOT_FAN and plan.fan == () and plan.n_children == 1
    m = SearchInstance.new_root(k33_minus_matching(), 0)
    plan = m.select_pivot_branching()
    assert plan.kind is BranchKind.PIVOT_FAN and plan.vertex == 0 and plan.fan == (3,)
    assert plan.n_children == 2


def test_pivot_binary_when_nd_c_exceeds_budget():
    # edgeless 3x3, budget 1: everything is in C0 but each vertex misses 3 in C
    inst = SearchInstance.new_root(BipartiteGraph.from_edges(3, 3, []), 1)
    plan = inst.select_pivot_branching()
    assert plan.kind is BranchKind.BINARY and plan.vertex == 0
    # with budget 0 the same vertex becomes a pivot with a full fan
    plan = SearchInstance.new_root(BipartiteGraph.from_edges(3, 3, []), 0).select_pivot_branching()
    assert plan.kind is BranchKind.PIVOT_FAN and plan.fan == (3, 4, 5)


def test_pivot_binary_when_too_many_outside_c0():
    # S = {u0}; v1 and v2 miss u0 while the budget is 1
    g = BipartiteGraph.from_edges(2, 3, [(0, 0), (1, 0), (1, 1), (1, 2)])
    inst = SearchInstance(g, 1, partial=g.join_mask([0], []))
    plan = inst.select_pivot_branching()
    assert plan.kind is BranchKind.BINARY and plan.vertex == g.n_left + 1
    empty_c0 = SearchInstance(BipartiteGraph.from_edges(1, 3, []), 3, partial=1)
    assert empty_c0.select_pivot_branching().kind is BranchKind.BINARY


def _select_reference(sh):
    """Pivot decision tree evaluated from scratch on the shadow."""
    budget = sh.k - sh.ne()
    C = sorted(sh.C)
    c0 = [v for v in C if sh.nd(v, sh.S) == 0]
    if not c0 or len(C) - len(c0) > budget:
        top = max(sh.nd(v, sh.S) for v in C)
        return BranchKind.BINARY, min(v for v in C if sh.nd(v, sh.S) == top), ()
    low = min(sh.nd(v, sh.C) for v in c0)
    u = min(v for v in c0 if sh.nd(v, sh.C) == low)
    if low > budget > 0:
        return BranchKind.BINARY, u, ()
    return BranchKind.PIVOT_FAN, u, tuple(sorted(sh.nonadj(u) & sh.C))


@settings(max_examples=150, deadline=None)
@given(graphs(max_left=5, max_right=5), st.integers(0, 3), st.randoms(use_true_random=False))
def test_random_operations_match_shadow(g, k, rng):
    inst = SearchInstance.new_root(g, k)
    stack = [(None, Shadow(g, k, (), set(members(g, inst.C))))]
    assert_same(inst, stack[-1][1])
    for _ in range(25):
        sh = stack[-1][1]
        op = rng.random()
        if inst.C and op < 0.4:
            u = rng.choice(sorted(sh.C))
            token = inst.update_after_add(u)
            nxt = sh.copy()
            nxt.add(u)
            stack.append((token, nxt))
        elif inst.C and op < 0.7:
            u = rng.choice(sorted(sh.C))
            token = inst.remove_candidate(u)
            nxt = sh.copy()
            nxt.C.discard(u)
            stack.append((token, nxt))
        elif len(stack) > 1:
            token, _ = stack.pop()
            inst.rollback(token)
        sh = stack[-1][1]
        assert_same(inst, sh)
        budget = k - sh.ne()
        assert all(sh.nd(v, sh.S) <= budget for v in sh.C)
        if inst.C:
            kind, u, fan = _select_reference(sh)
            plan = inst.select_pivot_branching()
            assert (plan.kind, plan.vertex, plan.fan) == (kind, u, fan)
            assert set(plan.fan) <= sh.nonadj(plan.vertex)
            ndS = {v: sh.nd(v, sh.S) for v in sh.C}
            top = max(ndS.values())
            if top:
                want = min(v for v in sh.C if ndS[v] == top)
            else:
                ndC = {v: sh.nd(v, sh.C) for v in sh.C}
                want = min(v for v in sh.C if ndC[v] == max(ndC.values()))
            assert inst.select_binary_branching_vertex() == want
    while len(stack) > 1:
        token, _ = stack.pop()
        inst.rollback(token)
    assert_same(inst, stack[0][1])


def test_clone_is_independent():
    inst = SearchInstance.new_root(k33_minus_matching(), 1)
    c = inst.clone()
    c.update_after_add(0)
    assert inst.S == 0 and c.S != 0


def test_partial_over_budget_rejected():
    g = BipartiteGraph.from_edges(2, 2, [])
    with pytest.raises(ContractError):
        SearchInstance(g, 1, partial=g.join_mask([0, 1], [0]))
