"""Ground-truth procedures: tight path/cycle verification and exact searches.

These exist to validate the constructive pipeline on small instances, not to
scale. ``dp_hamilton`` explores states ``(visited set, last two vertices)``;
``dp_connector`` enumerates every internal sequence of the requested length.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

from . import _kernels
from .errors import TooLarge
from .hypergraph import ThreeGraph, bits, mask_of
from .paths import (
    PathEnd,
    TightCycle,
    TightPath,
    is_tight_cycle,
    is_tight_path,
)

DEFAULT_CAP = 18


def verify_tight_path(g: ThreeGraph, seq: Sequence[int]) -> bool:
    return is_tight_path(g, seq)


def verify_tight_cycle(g: ThreeGraph, seq: Sequence[int], vertex_set=None) -> bool:
    """True iff ``seq`` is a tight cycle in ``g`` (length >= 5).

    When ``vertex_set`` is given the cycle must cover exactly that set.
    """
    return is_tight_cycle(g, seq, vertex_set)


def verify_hamilton_cycle(g: ThreeGraph, seq: Sequence[int]) -> bool:
    return is_tight_cycle(g, seq, range(g.n))


def dp_hamilton(g: ThreeGraph, cap: int = DEFAULT_CAP) -> TightCycle | None:
    """Exact tight Hamiltonicity test with a witness.

    Returns the lexicographically least cyclic order starting at vertex 0,
    or ``None``. Graphs on fewer than 5 vertices have no tight cycle under
    the length >= 5 convention and return ``None``.
    """
    if g.n > cap:
        raise TooLarge(f"dp_hamilton is capped at n={cap}, got n={g.n}", n=g.n, cap=cap)
    order = _kernels.hamilton_cycle(g)
    return None if order is None else TightCycle(order)


def dp_connector(
    g: ThreeGraph,
    a: PathEnd,
    b: PathEnd,
    internal_len: int,
    forbidden: Iterable[int] = (),
    *,
    shadow_graph: ThreeGraph | None = None,
    beta: float | None = None,
    allowed: Iterable[int] | None = None,
    cap: int = DEFAULT_CAP,
) -> TightPath | None:
    """Exhaustive search for ``a.inner a.outer u1..uk b.outer b.inner``.

    If ``shadow_graph`` and ``beta`` are given, every consecutive pair from
    ``(a.outer, u1)`` to ``(uk, b.outer)`` must have codegree at least
    ``beta`` there. Returns the lexicographically least connector.
    """
    if g.n > cap:
        raise TooLarge(f"dp_connector is capped at n={cap}, got n={g.n}", n=g.n, cap=cap)
    fixed = [a.inner, a.outer, b.outer, b.inner]
    if len(set(fixed)) != 4:
        return None
    pool = mask_of(range(g.n)) if allowed is None else mask_of(allowed)
    pool &= ~mask_of(forbidden) & ~mask_of(fixed)
    k = internal_len
    total = k + 4

    def pair_ok(x: int, y: int) -> bool:
        if shadow_graph is None or beta is None:
            return True
        return shadow_graph.codegree(x, y) >= beta

    seq = [a.inner, a.outer]

    def rec(used: int) -> bool:
        i = len(seq)
        if i == total:
            return True
        if i >= k + 2:
            choices = [fixed[2] if i == k + 2 else fixed[3]]
        else:
            choices = bits(pool & ~used)
        for r in choices:
            if not g.has_edge(seq[-2], seq[-1], r):
                continue
            if 1 <= i - 1 <= k + 1 and not pair_ok(seq[-1], r):
                continue
            seq.append(r)
            if rec(used | 1 << r):
                return True
            seq.pop()
        return False

    if rec(mask_of(fixed)):
        return TightPath(seq)
    return None
