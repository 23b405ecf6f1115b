"""Immutable bipartite graph, edge-list I/O and neighborhood queries."""

from __future__ import annotations

import io
import os
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, TextIO


class Side(IntEnum):
    LEFT = 0
    RIGHT = 1

    @property
    def other(self) -> "Side":
        return Side(1 - self)


LEFT = Side.LEFT
RIGHT = Side.RIGHT


class VertexRef(NamedTuple):
    side: Side
    index: int


class EdgeListError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def iter_bits(mask: int):
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Bipartite graph G = (U, V, E) with dense 0-based indices per side.

    ``adj_left[u]`` is the strictly increasing tuple of right neighbours of
    left vertex ``u``; ``adj_right`` is the mirror image. ``label_offset`` maps
    indices back to file labels (``label = index + offset``).
    """

    n_left: int
    n_right: int
    adj_left: tuple[tuple[int, ...], ...]
    adj_right: tuple[tuple[int, ...], ...]
    label_offset: int = 0
    duplicates: int = field(default=0, compare=False)

    @classmethod
    def from_edges(
        cls,
        n_left: int,
        n_right: int,
        edges: Iterable[tuple[int, int]],
        label_offset: int = 0,
    ) -> "BipartiteGraph":
        left: list[set[int]] = [set() for _ in range(n_left)]
        seen = 0
        for u, v in edges:
            if not (0 <= u < n_left and 0 <= v < n_right):
                raise ValueError(f"edge ({u}, {v}) outside {n_left}x{n_right}")
            left[u].add(v)
            seen += 1
        right: list[list[int]] = [[] for _ in range(n_right)]
        for u, nbrs in enumerate(left):
            for v in nbrs:
                right[v].append(u)
        m = sum(len(s) for s in left)
        return cls(
            n_left,
            n_right,
            tuple(tuple(sorted(s)) for s in left),
            tuple(tuple(sorted(r)) for r in right),
            label_offset,
            duplicates=seen - m,
        )

    @classmethod
    def complete(cls, n_left: int, n_right: int) -> "BipartiteGraph":
        return cls.from_edges(
            n_left, n_right, [(u, v) for u in range(n_left) for v in range(n_right)]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_left == other.n_left
            and self.n_right == other.n_right
            and self.adj_left == other.adj_left
            and self.label_offset == other.label_offset
        )

    def __hash__(self) -> int:
        return hash((self.n_left, self.n_right, self.adj_left))

    def __repr__(self) -> str:
        return f"BipartiteGraph(n_left={self.n_left}, n_right={self.n_right}, m={self.m})"

    # -- basic queries -------------------------------------------------------

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj_left)

    @property
    def n(self) -> int:
        return self.n_left + self.n_right

    def side_size(self, side: Side) -> int:
        return self.n_left if side == LEFT else self.n_right

    def neighbors(self, v: VertexRef) -> tuple[int, ...]:
        return self.adj_left[v.index] if v.side == LEFT else self.adj_right[v.index]

    def degree(self, v: VertexRef) -> int:
        return len(self.neighbors(v))

    def non_degree(self, v: VertexRef) -> int:
        return self.side_size(v.side.other) - self.degree(v)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adj_left[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self) -> Iterable[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj_left):
            for v in nbrs:
                yield u, v

    def common_neighbors(self, a: VertexRef, b: VertexRef) -> int:
        if a.side != b.side:
            raise ValueError("common_neighbors needs two vertices on the same side")
        na, nb = self.neighbors(a), self.neighbors(b)
        if len(na) > len(nb):
            na, nb = nb, na
        count = 0
        for x in na:
            i = bisect_left(nb, x)
            if i < len(nb) and nb[i] == x:
                count += 1
        return count

    def two_hop_after(self, order: Sequence[int], i: int) -> set[int]:
        """Left vertices sharing a neighbour with ``order[i]`` placed after it in ``order``."""
        pos = {u: p for p, u in enumerate(order)}
        u = order[i]
        out = set()
        for v in self.adj_left[u]:
            for w in self.adj_right[v]:
                if pos[w] > i:
                    out.add(w)
        return out

    def non_edge_count(self, left: Iterable[int], right: Iterable[int]) -> int:
        left = list(left)
        right_set = set(right)
        induced = sum(1 for u in left for v in self.adj_left[u] if v in right_set)
        return len(left) * len(right_set) - induced

    def edge_count(self, left: Iterable[int], right: Iterable[int]) -> int:
        right_set = set(right)
        return sum(1 for u in left for v in self.adj_left[u] if v in right_set)

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(
            self.n_right, self.n_left, self.adj_right, self.adj_left, self.label_offset
        )

    def label(self, index: int) -> int:
        return index + self.label_offset

    # -- bitmask views used by the search ------------------------------------
    #
    # Global vertex ids: left u -> u, right v -> n_left + v. Masks are Python
    # ints over that id space, so LEFT-before-RIGHT ordering is just id order.

    @cached_property
    def left_mask(self) -> int:
        return (1 << self.n_left) - 1

    @cached_property
    def right_mask(self) -> int:
        return ((1 << self.n_right) - 1) << self.n_left

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        nl = self.n_left
        out = []
        for nbrs in self.adj_left:
            m = 0
            for v in nbrs:
                m |= 1 << (nl + v)
            out.append(m)
        for nbrs in self.adj_right:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def nonadj_masks(self) -> tuple[int, ...]:
        """Opposite-side non-neighbours of every global id."""
        nl = self.n_left
        lm, rm = self.left_mask, self.right_mask
        adj = self.adj_masks
        return tuple((rm if x < nl else lm) & ~adj[x] for x in range(self.n))

    def gid(self, v: VertexRef) -> int:
        return v.index if v.side == LEFT else self.n_left + v.index

    def ref(self, gid: int) -> VertexRef:
        if gid < self.n_left:
            return VertexRef(LEFT, gid)
        return VertexRef(RIGHT, gid - self.n_left)

    def split_mask(self, mask: int) -> tuple[list[int], list[int]]:
        """Left and right indices contained in a global-id mask."""
        nl = self.n_left
        return (
            list(iter_bits(mask & self.left_mask)),
            list(iter_bits(mask >> nl)),
        )

    def join_mask(self, left: Iterable[int], right: Iterable[int]) -> int:
        nl = self.n_left
        m = 0
        for u in left:
            m |= 1 << u
        for v in right:
            m |= 1 << (nl + v)
        return m


# -- edge-list I/O ------------------------------------------------------------


def _header_sizes(line: str) -> tuple[int, int] | None:
    # KONECT size line: "% m n_left n_right"
    toks = line.lstrip("%#").split()
    if len(toks) == 3 and all(t.isdigit() for t in toks):
        return int(toks[1]), int(toks[2])
    return None


def parse_edge_list(
    lines: Iterable[str],
    one_based: bool = False,
    comment_prefixes: tuple[str, ...] = ("%", "#"),
) -> BipartiteGraph:
    """Build a graph from edge-list lines (``left right`` per line).

    Columns past the second (KONECT weights/timestamps) are ignored. A comment
    line of three integers is read as the ``m n_left n_right`` size header.
    """
    offset = 1 if one_based else 0
    edges: list[tuple[int, int]] = []
    sizes = None
    max_u = max_v = -1
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(comment_prefixes):
            if sizes is None:
                sizes = _header_sizes(line)
            continue
        toks = line.split()
        if len(toks) < 2:
            raise EdgeListError(lineno, f"expected two vertex ids, got {line!r}")
        try:
            u, v = int(toks[0]) - offset, int(toks[1]) - offset
        except ValueError:
            raise EdgeListError(lineno, f"non-integer vertex id in {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListError(lineno, f"vertex id below {offset} in {line!r}")
        edges.append((u, v))
        max_u = max(max_u, u)
        max_v = max(max_v, v)
    n_left, n_right = max_u + 1, max_v + 1
    if sizes is not None:
        n_left, n_right = max(n_left, sizes[0]), max(n_right, sizes[1])
    return BipartiteGraph.from_edges(n_left, n_right, edges, label_offset=offset)


def load_edge_list(
    source: str | os.PathLike | TextIO,
    one_based: bool = False,
    comment_prefixes: tuple[str, ...] = ("%", "#"),
) -> BipartiteGraph:
    """Load from a path, an open text stream, or (if it contains a newline) raw text."""
    if hasattr(source, "read"):
        return parse_edge_list(source, one_based, comment_prefixes)
    if isinstance(source, str) and ("\n" in source or source == ""):
        return parse_edge_list(io.StringIO(source), one_based, comment_prefixes)
    with open(source, encoding="utf-8") as fh:
        return parse_edge_list(fh, one_based, comment_prefixes)


def dump_edge_list(g: BipartiteGraph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()


def write_edge_list(g: BipartiteGraph, out: str | os.PathLike | TextIO) -> None:
    if not hasattr(out, "write"):
        with open(out, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
        return
    off = g.label_offset
    out.write("% bip unweighted\n")
    out.write(f"% {g.m} {g.n_left} {g.n_right}\n")
    for u, v in g.edges():
        out.write(f"{u + off} {v + off}\n")
