"""Vertex-indexed 3-uniform hypergraph storage.

Pair neighbourhoods ``N(x, y)`` are kept as Python ``int`` bitsets, so a
codegree is a popcount and a neighbourhood intersection is a bitwise AND.
Vertices are the dense integers ``0 .. n-1``.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import combinations

import numpy as np

from .errors import DegeneratePair, DegenerateTriple, OutOfRange

Triple = tuple[int, int, int]


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def canonical(t: Iterable[int]) -> Triple:
    a, b, c = sorted(t)
    return (a, b, c)


class ThreeGraph:
    """A 3-graph on ``range(n)`` with an O(1) pair-neighbourhood index.

    ``nbr[x][y]`` is the bitset of all ``z`` with ``{x, y, z}`` an edge; it is
    kept symmetric and in exact agreement with the edge set.
    """

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self._edges: set[Triple] = set()
        self.nbr: list[list[int]] = [[0] * n for _ in range(n)]
        self._dense: np.ndarray | None = None
        self._packed: np.ndarray | None = None
        self._edge_list: list[Triple] | None = None
        for t in edges:
            self.add_edge(t)

    # -- construction ---------------------------------------------------
    @classmethod
    def complete(cls, n: int) -> "ThreeGraph":
        return cls(n, combinations(range(n), 3))

    def _check(self, t: Iterable[int]) -> Triple:
        t = tuple(t)
        if len(t) != 3:
            raise DegenerateTriple(f"an edge needs exactly 3 vertices, got {t!r}")
        for v in t:
            if not 0 <= v < self.n:
                raise OutOfRange(f"vertex {v} outside [0, {self.n})")
        a, b, c = sorted(t)
        if a == b or b == c:
            raise DegenerateTriple(f"repeated vertex in {t!r}")
        return (a, b, c)

    def _touch(self) -> None:
        self._dense = None
        self._packed = None
        self._edge_list = None

    def add_edge(self, t: Iterable[int]) -> None:
        a, b, c = e = self._check(t)
        if e in self._edges:
            return
        self._edges.add(e)
        nbr = self.nbr
        nbr[a][b] |= 1 << c
        nbr[b][a] |= 1 << c
        nbr[a][c] |= 1 << b
        nbr[c][a] |= 1 << b
        nbr[b][c] |= 1 << a
        nbr[c][b] |= 1 << a
        self._touch()

    def remove_edge(self, t: Iterable[int]) -> None:
        a, b, c = e = self._check(t)
        if e not in self._edges:
            return
        self._edges.discard(e)
        nbr = self.nbr
        nbr[a][b] &= ~(1 << c)
        nbr[b][a] &= ~(1 << c)
        nbr[a][c] &= ~(1 << b)
        nbr[c][a] &= ~(1 << b)
        nbr[b][c] &= ~(1 << a)
        nbr[c][b] &= ~(1 << a)
        self._touch()

    def copy(self) -> "ThreeGraph":
        g = ThreeGraph(self.n)
        g._edges = set(self._edges)
        g.nbr = [row[:] for row in self.nbr]
        return g

    # -- queries --------------------------------------------------------
    def has_edge(self, a: int, b: int, c: int) -> bool:
        if a == b or b == c or a == c:
            return False
        return bool(self.nbr[a][b] >> c & 1)

    @property
    def edges(self) -> frozenset[Triple]:
        return frozenset(self._edges)

    def edge_list(self) -> list[Triple]:
        """Edges in ascending lexicographic order (cached)."""
        if self._edge_list is None:
            self._edge_list = sorted(self._edges)
        return self._edge_list

    def num_edges(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.edge_list())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThreeGraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __repr__(self) -> str:
        return f"ThreeGraph(n={self.n}, edges={len(self._edges)})"

    def codegree(self, x: int, y: int) -> int:
        if x == y:
            raise DegeneratePair(f"codegree needs two distinct vertices, got {x}, {y}")
        return self.nbr[x][y].bit_count()

    def neighbors(self, x: int, y: int) -> list[int]:
        return bits(self.nbr[x][y])

    def vertex_degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise OutOfRange(f"vertex {v} outside [0, {self.n})")
        # each edge through v is seen from both of its other two vertices
        return sum(m.bit_count() for m in self.nbr[v]) // 2

    def degrees(self) -> list[int]:
        return [self.vertex_degree(v) for v in range(self.n)]

    def min_vertex_degree(self) -> int:
        return min(self.degrees(), default=0)

    def min_codegree(self) -> int:
        return min(
            (self.nbr[x][y].bit_count() for x, y in combinations(range(self.n), 2)),
            default=0,
        )

    def shadow(self) -> set[tuple[int, int]]:
        """Ordered pairs of positive codegree."""
        out = set()
        for x in range(self.n):
            row = self.nbr[x]
            for y in range(self.n):
                if row[y]:
                    out.add((x, y))
        return out

    def shadow_size(self) -> int:
        """Number of unordered pairs of positive codegree."""
        return sum(
            1 for x, y in combinations(range(self.n), 2) if self.nbr[x][y]
        )

    def restricted_degree(self, v: int, within: Iterable[int] | int) -> int:
        """Edges ``{v, a, b}`` with ``a, b`` in ``within``."""
        amask = within if isinstance(within, int) else mask_of(within)
        amask &= ~(1 << v)
        row = self.nbr[v]
        return sum((row[a] & amask).bit_count() for a in bits(amask)) // 2

    def restricted_codegree(self, x: int, y: int, within: Iterable[int] | int) -> int:
        amask = within if isinstance(within, int) else mask_of(within)
        if x == y:
            raise DegeneratePair(f"codegree needs two distinct vertices, got {x}, {y}")
        return (self.nbr[x][y] & amask).bit_count()

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["ThreeGraph", list[int]]:
        """Subgraph induced on ``vertices``, relabelled to ``0 .. |S|-1``.

        Returns the subgraph and ``labels`` with ``labels[new] = old``.
        """
        labels = sorted(set(vertices))
        for v in labels:
            if not 0 <= v < self.n:
                raise OutOfRange(f"vertex {v} outside [0, {self.n})")
        index = {old: new for new, old in enumerate(labels)}
        smask = mask_of(labels)
        sub = ThreeGraph(len(labels))
        for a, b in combinations(labels, 2):
            for c in bits(self.nbr[a][b] & smask):
                if c > b:
                    sub._add_unchecked(index[a], index[b], index[c])
        return sub, labels

    def _add_unchecked(self, a: int, b: int, c: int) -> None:
        # caller guarantees a < b < c, in range
        self._edges.add((a, b, c))
        nbr = self.nbr
        nbr[a][b] |= 1 << c
        nbr[b][a] |= 1 << c
        nbr[a][c] |= 1 << b
        nbr[c][a] |= 1 << b
        nbr[b][c] |= 1 << a
        nbr[c][b] |= 1 << a
        self._touch()

    # -- derived representations ------------------------------------------
    def dense(self) -> np.ndarray:
        """``uint8`` tensor ``E[x, y, z] = 1`` iff ``{x, y, z}`` is an edge.

        Cached until the next mutation; callers must not write to it.
        """
        if self._dense is None:
            n = self.n
            arr = np.zeros((n, n, n), dtype=np.uint8)
            if self._edges:
                e = np.array(self.edge_list(), dtype=np.intp)
                a, b, c = e[:, 0], e[:, 1], e[:, 2]
                for i, j, k in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
                    arr[i, j, k] = 1
            arr.setflags(write=False)
            self._dense = arr
        return self._dense

    def packed(self) -> np.ndarray:
        """``uint64`` array ``P[x, y, k]``: word ``k`` of the bitset ``N(x, y)``.

        Cached like :meth:`dense`; callers must not write to it.
        """
        if self._packed is None:
            n = self.n
            w = max(1, (n + 63) // 64)
            nb = 8 * w
            buf = bytearray()
            for row in self.nbr:
                for m in row:
                    buf += m.to_bytes(nb, "little")
            arr = np.frombuffer(bytes(buf), dtype="<u8").astype(np.uint64).reshape(n, n, w)
            arr.setflags(write=False)
            self._packed = arr
        return self._packed

    def codegree_matrix(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n), dtype=np.int64)
        for x in range(n):
            row = self.nbr[x]
            for y in range(n):
                out[x, y] = row[y].bit_count()
        return out


def index_from_edges(n: int, edges: Iterable[Triple]) -> list[list[int]]:
    """Pair index rebuilt from scratch; used to audit incremental updates."""
    nbr = [[0] * n for _ in range(n)]
    for a, b, c in edges:
        nbr[a][b] |= 1 << c
        nbr[b][a] |= 1 << c
        nbr[a][c] |= 1 << b
        nbr[c][a] |= 1 << b
        nbr[b][c] |= 1 << a
        nbr[c][b] |= 1 << a
    return nbr


def new_graph(n: int) -> ThreeGraph:
    return ThreeGraph(n)
