"""Tight paths, tight cycles, and their ends.

A path ``v1 v2 ... vp`` has two ends, each an ordered pair ``(inner, outer)``:
the head end ``(v2, v1)`` and the tail end ``(v_{p-1}, v_p)``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .hypergraph import ThreeGraph

MIN_CYCLE_LEN = 5


@dataclass(frozen=True)
class PathEnd:
    inner: int
    outer: int

    def pair(self) -> tuple[int, int]:
        return (self.inner, self.outer)


def windows_ok(g: ThreeGraph, seq: Sequence[int], cyclic: bool = False) -> bool:
    m = len(seq)
    last = m if cyclic else m - 2
    for i in range(last):
        a, b, c = seq[i], seq[(i + 1) % m], seq[(i + 2) % m]
        if not g.has_edge(a, b, c):
            return False
    return True


def is_tight_path(g: ThreeGraph, seq: Sequence[int]) -> bool:
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < g.n for v in seq):
        return False
    return windows_ok(g, seq)


def is_tight_cycle(g: ThreeGraph, seq: Sequence[int], vertex_set=None) -> bool:
    if len(seq) < MIN_CYCLE_LEN or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < g.n for v in seq):
        return False
    if vertex_set is not None and set(seq) != set(vertex_set):
        return False
    return windows_ok(g, seq, cyclic=True)


@dataclass(frozen=True)
class TightPath:
    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "seq", tuple(self.seq))

    def __len__(self) -> int:
        return len(self.seq)

    @property
    def head(self) -> PathEnd:
        return PathEnd(self.seq[1], self.seq[0])

    @property
    def tail(self) -> PathEnd:
        return PathEnd(self.seq[-2], self.seq[-1])

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.seq)

    def reversed(self) -> "TightPath":
        return TightPath(self.seq[::-1])

    def is_tight(self, g: ThreeGraph) -> bool:
        return is_tight_path(g, self.seq)


@dataclass(frozen=True)
class TightCycle:
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))

    def __len__(self) -> int:
        return len(self.order)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.order)

    def rotated_to(self, v: int) -> "TightCycle":
        i = self.order.index(v)
        return TightCycle(self.order[i:] + self.order[:i])

    def is_tight(self, g: ThreeGraph) -> bool:
        return is_tight_cycle(g, self.order)
