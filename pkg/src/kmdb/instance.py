"""Branch-and-bound state (S, C) with an undo log.

Vertices are addressed by global id (left ``u`` -> ``u``, right ``v`` ->
``n_left + v``) and S, C are int bitmasks over that id space.

Non-neighbour counts towards S are kept bit-sliced: ``levels[j-1]`` is the
mask of vertices with at least ``j`` opposite-side non-neighbours in S, for
``j = 1 .. k+1`` (counts saturate at k+1, which is already over any budget).
Adding a vertex to S updates the k+1 masks with one AND/OR each, budget
filtering is a single mask operation, and a checkpoint is a tuple of ints.
The masks are exact on C; vertices absorbed by Update only have
non-neighbours outside S u C, which never re-enter C within the branch, so
their contribution is skipped.
Non-neighbour counts towards C are computed on demand with a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .graph import BipartiteGraph, VertexRef


class ContractError(RuntimeError):
    """A documented precondition of the search state was violated."""


class BranchKind(Enum):
    BINARY = "binary"
    PIVOT_FAN = "pivot_fan"


@dataclass(frozen=True)
class BranchPlan:
    kind: BranchKind
    vertex: int
    fan: tuple[int, ...] = field(default=())

    @property
    def n_children(self) -> int:
        return 2 if self.kind is BranchKind.BINARY else len(self.fan) + 1

    @property
    def members(self) -> tuple[int, ...]:
        return (self.vertex,) + self.fan


Vertex = Union[int, VertexRef]


class SearchInstance:
    __slots__ = ("graph", "k", "S", "C", "ne_s", "levels", "_nonadj", "_trail")

    def __init__(self, graph: BipartiteGraph, k: int, candidates: int | None = None, partial: int = 0):
        """Build from masks; candidates that would break the k budget are dropped."""
        if k < 0:
            raise ValueError("k must be non-negative")
        self.graph = graph
        self.k = k
        self._nonadj = nonadj = graph.nonadj_masks
        if candidates is None:
            candidates = ((1 << graph.n) - 1) & ~partial
        if candidates & partial:
            raise ContractError("partial and candidate sets overlap")
        self.S = partial
        self.C = candidates
        self._trail: list[tuple] = []
        levels = [0] * (k + 1)
        ne = 0
        m = partial
        while m:
            low = m & -m
            x = low.bit_length() - 1
            m ^= low
            if x < graph.n_left:
                ne += (partial & nonadj[x]).bit_count()
            carry = nonadj[x]
            for j in range(k + 1):
                nxt = levels[j] & carry
                levels[j] |= carry
                carry = nxt
                if not carry:
                    break
        if ne > k:
            raise ContractError(f"partial set has {ne} non-edges > k={k}")
        self.ne_s = ne
        self.levels = tuple(levels)
        self.C &= ~self.levels[k - ne]

    @classmethod
    def new_root(cls, graph: BipartiteGraph, k: int) -> "SearchInstance":
        return cls(graph, k)

    def clone(self) -> "SearchInstance":
        new = object.__new__(SearchInstance)
        new.graph = self.graph
        new.k = self.k
        new._nonadj = self._nonadj
        new.S = self.S
        new.C = self.C
        new.ne_s = self.ne_s
        new.levels = self.levels
        new._trail = []
        return new

    # -- views -----------------------------------------------------------------

    def _gid(self, v: Vertex) -> int:
        return v if isinstance(v, int) else self.graph.gid(v)

    def nd_s(self, v: Vertex) -> int:
        """Opposite-side non-neighbours of ``v`` in S."""
        return (self.S & self._nonadj[self._gid(v)]).bit_count()

    def nd_c(self, v: Vertex) -> int:
        """Opposite-side non-neighbours of ``v`` in C."""
        return (self.C & self._nonadj[self._gid(v)]).bit_count()

    @property
    def partial(self) -> tuple[list[int], list[int]]:
        return self.graph.split_mask(self.S)

    @property
    def candidate(self) -> tuple[list[int], list[int]]:
        return self.graph.split_mask(self.C)

    @property
    def left_size(self) -> int:
        return (self.S & self.graph.left_mask).bit_count()

    @property
    def right_size(self) -> int:
        return (self.S >> self.graph.n_left).bit_count()

    @property
    def edges(self) -> int:
        return self.left_size * self.right_size - self.ne_s

    @property
    def budget(self) -> int:
        return self.k - self.ne_s

    def non_neighbors_in_c(self, v: Vertex) -> list[int]:
        """N̄_C(v) as ascending global ids."""
        out = []
        m = self.C & self._nonadj[self._gid(v)]
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def state(self) -> tuple:
        return (self.S, self.C, self.ne_s, self.levels)

    def check(self) -> None:
        """Recompute everything from S and C and compare; raises AssertionError."""
        S, C, k = self.S, self.C, self.k
        if S & C:
            raise AssertionError("S and C overlap")
        fresh = SearchInstance(self.graph, k, candidates=0, partial=S)
        if fresh.ne_s != self.ne_s:
            raise AssertionError("non-edge count stale")
        if any((a ^ b) & C for a, b in zip(fresh.levels, self.levels)):
            raise AssertionError("non-neighbour level masks stale on C")
        if C & self.levels[k - self.ne_s]:
            raise AssertionError("a candidate violates the budget")

    # -- operations --------------------------------------------------------------

    def _push(self) -> int:
        token = len(self._trail)
        self._trail.append((self.S, self.C, self.ne_s, self.levels))
        return token

    def update_after_add(self, u: Vertex) -> int:
        """Move ``u`` into S, then filter and absorb candidates (the Update step).

        Candidates whose non-neighbours in the new S exceed the remaining
        budget are dropped; candidates left with no non-neighbour in S u C are
        moved straight into S. Returns a rollback token.
        """
        x = self._gid(u)
        bit = 1 << x
        C = self.C
        if not C & bit:
            raise ContractError(f"vertex {x} is not a candidate")
        nonadj = self._nonadj
        nx = nonadj[x]
        S = self.S
        ne = self.ne_s + (S & nx).bit_count()
        k = self.k
        if ne > k:
            raise ContractError(f"adding vertex {x} exceeds k non-edges")
        token = self._push()
        levels = list(self.levels)
        carry = nx
        for j in range(k + 1):
            nxt = levels[j] & carry
            levels[j] |= carry
            carry = nxt
            if not carry:
                break
        S |= bit
        C = (C ^ bit) & ~levels[k - ne]
        # absorb candidates with no non-neighbour in the surviving S u C
        m = C & ~levels[0]
        zero = 0
        while m:
            low = m & -m
            m ^= low
            if not C & nonadj[low.bit_length() - 1]:
                zero |= low
        self.S = S | zero
        self.C = C ^ zero
        self.ne_s = ne
        self.levels = tuple(levels)
        return token

    def remove_candidate(self, u: Vertex) -> int:
        x = self._gid(u)
        bit = 1 << x
        if not self.C & bit:
            raise ContractError(f"vertex {x} is not a candidate")
        token = self._push()
        self.C ^= bit
        return token

    def remove_candidates(self, mask: int) -> int:
        """Drop every candidate in ``mask`` under a single checkpoint."""
        token = self._push()
        self.C &= ~mask
        return token

    def rollback(self, token: int) -> None:
        trail = self._trail
        if not 0 <= token < len(trail):
            raise ContractError("rollback token is not an outstanding checkpoint")
        self.S, self.C, self.ne_s, self.levels = trail[token]
        del trail[token:]

    # -- branching-vertex selection ----------------------------------------------

    def _top_level(self) -> tuple[int, int]:
        """(max nd_s over C, mask of candidates attaining it), counts capped at k+1."""
        C, levels = self.C, self.levels
        for j in range(len(levels) - 1, -1, -1):
            hit = C & levels[j]
            if hit:
                return j + 1, hit
        return 0, C

    def select_binary_branching_vertex(self) -> int:
        """argmax nd_s over C if positive, else argmax nd_c; ties to the smallest id."""
        C = self.C
        if not C:
            raise ContractError("empty candidate set")
        top, hit = self._top_level()
        if top:
            return (hit & -hit).bit_length() - 1
        nonadj = self._nonadj
        best, arg = -1, -1
        m = C
        while m:
            low = m & -m
            m ^= low
            x = low.bit_length() - 1
            d = (C & nonadj[x]).bit_count()
            if d > best:
                best, arg = d, x
        return arg

    def select_pivot_branching(self) -> BranchPlan:
        C = self.C
        if not C:
            raise ContractError("empty candidate set")
        budget = self.k - self.ne_s
        c0 = C & ~self.levels[0]
        if not c0 or (C ^ c0).bit_count() > budget:
            top, hit = self._top_level()
            return BranchPlan(BranchKind.BINARY, (hit & -hit).bit_length() - 1)
        nonadj = self._nonadj
        low_c, arg = None, -1
        m = c0
        while m:
            low = m & -m
            m ^= low
            x = low.bit_length() - 1
            d = (C & nonadj[x]).bit_count()
            if low_c is None or d < low_c:
                low_c, arg = d, x
                if d == 0:
                    break
        if low_c > budget > 0:
            return BranchPlan(BranchKind.BINARY, arg)
        return BranchPlan(BranchKind.PIVOT_FAN, arg, tuple(self.non_neighbors_in_c(arg)))
