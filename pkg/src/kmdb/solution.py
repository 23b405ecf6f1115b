from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import BipartiteGraph


@dataclass(frozen=True)
class Solution:
    """A vertex set (left indices, right indices) and its induced edge count."""

    left: frozenset[int]
    right: frozenset[int]
    edges: int

    @classmethod
    def of(cls, g: BipartiteGraph, left: Iterable[int], right: Iterable[int]) -> "Solution":
        left, right = frozenset(left), frozenset(right)
        return cls(left, right, g.edge_count(left, right))

    def swapped(self) -> "Solution":
        return Solution(self.right, self.left, self.edges)

    def non_edges(self) -> int:
        return len(self.left) * len(self.right) - self.edges


def is_connected(g: BipartiteGraph, left: Iterable[int], right: Iterable[int]) -> bool:
    left, right = set(left), set(right)
    if not left and not right:
        return True
    start = ("L", next(iter(left))) if left else ("R", next(iter(right)))
    seen = {start}
    stack = [start]
    while stack:
        side, x = stack.pop()
        if side == "L":
            nbrs = (("R", v) for v in g.adj_left[x] if v in right)
        else:
            nbrs = (("L", u) for u in g.adj_right[x] if u in left)
        for y in nbrs:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(left) + len(right)


def validate(g: BipartiteGraph, sol: Solution, k: int, theta: int) -> list[str]:
    """Problems with ``sol`` as an answer for (k, theta); empty list when valid."""
    errs = []
    if any(not 0 <= u < g.n_left for u in sol.left) or any(not 0 <= v < g.n_right for v in sol.right):
        return ["vertex index out of range"]
    real = g.edge_count(sol.left, sol.right)
    if real != sol.edges:
        errs.append(f"edge count {sol.edges} != induced {real}")
    if len(sol.left) * len(sol.right) - real > k:
        errs.append("more than k non-edges")
    if len(sol.left) < theta or len(sol.right) < theta:
        errs.append("side below theta")
    if len(sol.left) > k and len(sol.right) > k and not is_connected(g, sol.left, sol.right):
        errs.append("not connected")
    return errs
