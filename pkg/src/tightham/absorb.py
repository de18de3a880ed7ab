"""v-absorbers: quadruples that let a path swallow ``v`` without moving its ends.

``(x, y, z, w)`` is a v-absorber when ``xyz``, ``yzw``, ``vxy``, ``vyz`` and
``vzw`` are all edges. Then both ``x y z w`` and ``x y v z w`` are tight
paths with ends ``(y, x)`` and ``(z, w)``.
"""
from __future__ import annotations

import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .errors import NotFound
from .hypergraph import ThreeGraph, bits, mask_of
from .paths import TightPath


@dataclass(frozen=True)
class Absorber:
    v: int
    x: int
    y: int
    z: int
    w: int

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.w)

    def reversed(self) -> "Absorber":
        return Absorber(self.v, self.w, self.z, self.y, self.x)


@dataclass(frozen=True)
class AbsorberConstraint:
    """Restrictions for :func:`find_absorber`.

    ``forbidden`` vertices may not appear; when ``allowed`` is given the quad
    must lie inside it. When ``shadow_graph`` is given, the boundary pairs
    ``(x, y)`` and ``(z, w)`` need codegree at least ``pair_threshold`` there,
    counted inside ``shadow_within`` if that is set.
    """

    forbidden: frozenset = frozenset()
    shadow_graph: Optional[ThreeGraph] = None
    pair_threshold: float = 1.0
    allowed: Optional[frozenset] = None
    shadow_within: Optional[frozenset] = None

    def __post_init__(self) -> None:
        if self.pair_threshold <= 0:
            raise ValueError("pair_threshold must be positive")


def is_absorber(g: ThreeGraph, v: int, quad: Iterable[int]) -> bool:
    x, y, z, w = quad
    if len({v, x, y, z, w}) != 5:
        return False
    return (
        g.has_edge(x, y, z)
        and g.has_edge(y, z, w)
        and g.has_edge(v, x, y)
        and g.has_edge(v, y, z)
        and g.has_edge(v, z, w)
    )


def count_absorbers(g: ThreeGraph, v: int) -> int:
    """Number of ordered quadruples that are v-absorbers."""
    return int(_kernels.count_absorbers(g, v))


def enumerate_absorbers(g: ThreeGraph, v: int) -> Iterator[Absorber]:
    """All v-absorbers: over edges ``vyz``, then ``x``, then ``w``, ascending."""
    nbr = g.nbr
    row_v = nbr[v]
    bv = 1 << v
    for y in range(g.n):
        if y == v:
            continue
        for z in bits(row_v[y]):
            yz = nbr[y][z]
            xs = row_v[y] & yz & ~bv
            for x in bits(xs):
                for w in bits(row_v[z] & yz & ~(1 << x)):
                    yield Absorber(v, x, y, z, w)


def _pairs_ok(a: Absorber, c: AbsorberConstraint) -> bool:
    h = c.shadow_graph
    if h is None:
        return True
    within = None if c.shadow_within is None else mask_of(c.shadow_within)
    for p, q in ((a.x, a.y), (a.z, a.w)):
        cod = h.nbr[p][q]
        if within is not None:
            cod &= within
        if cod.bit_count() < c.pair_threshold:
            return False
    return True


def find_absorber(
    g: ThreeGraph,
    v: int,
    c: AbsorberConstraint = AbsorberConstraint(),
    rng: random.Random | None = None,
    samples: int | None = None,
) -> Absorber:
    """A v-absorber satisfying ``c``.

    Tries ``samples`` (default ``50 n``) uniformly random quadruples of
    admissible vertices first, then enumerates exhaustively; raises
    :class:`NotFound` only when the enumeration is exhausted.
    """
    if v in c.forbidden:
        raise ValueError(f"vertex {v} is itself forbidden")
    rng = rng or random.Random(0)
    pool = set(range(g.n)) if c.allowed is None else set(c.allowed)
    pool -= set(c.forbidden)
    pool.discard(v)
    cands = sorted(pool)
    if len(cands) < 4:
        raise NotFound(f"only {len(cands)} admissible vertices for a {v}-absorber", v=v)
    budget = 50 * g.n if samples is None else samples
    for _ in range(budget):
        quad = rng.sample(cands, 4)
        if is_absorber(g, v, quad):
            a = Absorber(v, *quad)
            if _pairs_ok(a, c):
                return a
    pmask = mask_of(cands)
    nbr = g.nbr
    row_v = nbr[v]
    for y in cands:
        for z in bits(row_v[y] & pmask):
            yz = nbr[y][z]
            for x in bits(row_v[y] & yz & pmask):
                for w in bits(row_v[z] & yz & pmask & ~(1 << x)):
                    a = Absorber(v, x, y, z, w)
                    if _pairs_ok(a, c):
                        return a
    raise NotFound(f"no admissible {v}-absorber exists", v=v, candidates=len(cands))


def absorber_path(a: Absorber) -> TightPath:
    """The 5-vertex path ``x y v z w`` carried by the absorber."""
    return TightPath((a.x, a.y, a.v, a.z, a.w))


def skip_path(a: Absorber) -> TightPath:
    """The 4-vertex path ``x y z w`` that leaves ``v`` out."""
    return TightPath(a.quad)
