"""Short tight connectors between path ends.

A connector from end ``a`` to end ``b`` is the tight path

    a.inner, a.outer, u1, ..., uk, b.outer, b.inner

so a path ending ``... a.inner a.outer`` followed by the internal vertices
and a path starting ``b.outer b.inner ...`` is again a tight path. Every
consecutive pair from ``(a.outer, u1)`` to ``(uk, b.outer)`` must have
codegree at least ``beta_threshold`` in the shaved graph ``h'``.

The search grows partial connectors forward from ``a`` and backward from
``b`` and joins them on a shared middle pair. When no layer is truncated by
the beam the search is exhaustive, so a failure is exact.
"""
from __future__ import annotations

import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional

from .errors import BadEnds, NoPath
from .hypergraph import ThreeGraph, bits, mask_of
from .paths import PathEnd, TightCycle, TightPath, is_tight_path


@dataclass(frozen=True)
class ConnectorParams:
    internal_len: int = 6
    beta_threshold: float = 1.0
    beam: int = 2048
    allow_len_range: Optional[tuple[int, int]] = None
    retries: int = 3

    def __post_init__(self) -> None:
        if self.internal_len < 0:
            raise ValueError("internal_len must be non-negative")
        if self.beta_threshold <= 0:
            raise ValueError("beta_threshold must be positive")

    def lengths(self) -> list[int]:
        """Internal lengths to try: ``internal_len``, then shorter, then longer."""
        k = self.internal_len
        out = [k]
        if self.allow_len_range is not None:
            lo, hi = self.allow_len_range
            out += [j for j in range(k - 1, lo - 1, -1) if j >= 0]
            out += list(range(k + 1, hi + 1))
        return out


def tight_steps(g: ThreeGraph, end) -> set[tuple[int, int]]:
    """Pairs reachable by one tight step from the ordered pair ``end``."""
    x, y = end.pair() if isinstance(end, PathEnd) else end
    if x == y:
        raise ValueError("a tight step needs two distinct vertices")
    return {(y, z) for z in bits(g.nbr[x][y])}


class _PairFilter:
    """Lazily computed ``good[q]`` = vertices ``r`` with codegree(q, r) >= beta."""

    def __init__(self, hp: ThreeGraph, beta: float) -> None:
        self.hp = hp
        self.beta = beta
        self._good: dict[int, int] = {}

    def good(self, q: int) -> int:
        m = self._good.get(q)
        if m is None:
            row = self.hp.nbr[q]
            beta = self.beta
            m = 0
            for r in range(self.hp.n):
                if row[r].bit_count() >= beta:
                    m |= 1 << r
            self._good[q] = m
        return m

    def ok(self, q: int, r: int) -> bool:
        return bool(self.good(q) >> r & 1)


def _expand(layer, step_cands, beam, rng):
    """Children of ``layer`` under ``step_cands``; samples down to ``beam``.

    Returns (children, truncated).
    """
    options = []
    total = 0
    for item in layer:
        c = step_cands(item)
        if c:
            options.append((item, c))
            total += c.bit_count()
    truncated = beam is not None and total > beam
    out = []
    for (seq, used), c in options:
        rs = bits(c)
        if truncated:
            quota = max(1, math.ceil(beam * len(rs) / total))
            if quota < len(rs):
                rs = rng.sample(rs, quota)
        for r in rs:
            out.append((seq + (r,), used | 1 << r))
    return out, truncated


def _search(g, flt, a: PathEnd, b: PathEnd, k: int, pool: int, beam, rng):
    """One bidirectional pass at internal length ``k``.

    Returns (sequence or None, truncated, frontier sizes).
    """
    fixed = {0: a.inner, 1: a.outer, k + 2: b.outer, k + 3: b.inner}
    nbr = g.nbr
    f = -(-k // 2) + 1  # forward covers positions 0 .. f+1
    truncated = False

    def fwd_cands(item):
        seq, used = item
        i = len(seq)
        p, q = seq[-2], seq[-1]
        if i in fixed:
            r = fixed[i]
            ok = nbr[p][q] >> r & 1 and not used >> r & 1 and flt.ok(q, r)
            return 1 << r if ok else 0
        return nbr[p][q] & pool & ~used & flt.good(q)

    fwd = [((a.inner, a.outer), mask_of((a.inner, a.outer)))]
    sizes = [1]
    for _ in range(f):
        fwd, t = _expand(fwd, fwd_cands, beam, rng)
        truncated |= t
        sizes.append(len(fwd))
        if not fwd:
            return None, truncated, {"forward": sizes, "backward": []}

    # backward sequences are stored reversed: s_{k+3}, s_{k+2}, ..., s_j
    top = k + 3

    def bwd_cands(item):
        seq, used = item
        j = top - len(seq)
        p, q = seq[-2], seq[-1]
        if j in fixed:
            r = fixed[j]
            ok = nbr[p][q] >> r & 1 and not used >> r & 1 and flt.ok(q, r)
            return 1 << r if ok else 0
        return nbr[p][q] & pool & ~used & flt.good(q)

    bwd = [((b.inner, b.outer), mask_of((b.inner, b.outer)))]
    bsizes = [1]
    for _ in range(k + 2 - f):
        bwd, t = _expand(bwd, bwd_cands, beam, rng)
        truncated |= t
        bsizes.append(len(bwd))
        if not bwd:
            return None, truncated, {"forward": sizes, "backward": bsizes}

    meet: dict[tuple[int, int], list] = {}
    for seq, used in bwd:
        meet.setdefault((seq[-1], seq[-2]), []).append((seq, used))
    rng.shuffle(fwd)
    for seq, used in fwd:
        key = (seq[-2], seq[-1])
        overlap = (1 << key[0]) | (1 << key[1])
        for bseq, bused in meet.get(key, ()):
            if used & bused == overlap:
                return seq + bseq[::-1][2:], truncated, {"forward": sizes, "backward": bsizes}
    return None, truncated, {"forward": sizes, "backward": bsizes}


def _beam_schedule(p: ConnectorParams) -> list[int]:
    # narrow beams first; dense inputs rarely need the full width
    out = []
    w = 64
    while w < p.beam:
        out.append(w)
        w *= 4
    return out + [p.beam] * max(1, p.retries)


def connect_pair(
    g: ThreeGraph,
    hp: ThreeGraph,
    a: PathEnd,
    b: PathEnd,
    forbidden: Iterable[int] = (),
    p: ConnectorParams = ConnectorParams(),
    rng: random.Random | None = None,
    allowed: Iterable[int] | None = None,
    log: list | None = None,
) -> TightPath:
    """A tight connector from end ``a`` to end ``b`` in ``g``.

    Internal vertices come from ``allowed`` (default: all) minus
    ``forbidden`` and the four end vertices. Lengths are tried in the order
    of :meth:`ConnectorParams.lengths`. If ``log`` is a list, the chosen
    length and the waypoint pairs are appended to it.
    """
    rng = rng or random.Random(0)
    ends = (a.inner, a.outer, b.outer, b.inner)
    if len(set(ends)) != 4:
        raise ValueError(f"end vertices must be distinct, got {ends}")
    for e in (a, b):
        if not hp.nbr[e.inner][e.outer]:
            raise BadEnds(f"end {e.pair()} is not in the shadow of h'", end=e.pair())
    pool = mask_of(range(g.n)) if allowed is None else mask_of(allowed)
    pool &= ~mask_of(forbidden) & ~mask_of(ends)
    flt = _PairFilter(hp, p.beta_threshold)
    tried = {}
    for k in p.lengths():
        if k > pool.bit_count():
            tried[k] = "pool too small"
            continue
        for beam in _beam_schedule(p):
            seq, truncated, sizes = _search(g, flt, a, b, k, pool, beam, rng)
            if seq is not None:
                _audit(g, flt, seq, k, pool, ends)
                if log is not None:
                    log.append({"internal_len": k, "pairs": list(zip(seq[1:-2], seq[2:-1]))})
                return TightPath(seq)
            tried[k] = sizes
            if not truncated:
                break
    raise NoPath(
        f"no connector from {a.pair()} to {b.pair()}",
        frontiers=tried,
        pool=pool.bit_count(),
    )


def _audit(g, flt, seq: Sequence[int], k: int, pool: int, ends) -> None:
    if len(seq) != k + 4 or not is_tight_path(g, seq):
        raise AssertionError(f"connector {seq} is not a tight path of length {k + 4}")
    if tuple(seq[:2]) != ends[:2] or tuple(seq[-2:]) != ends[2:]:
        raise AssertionError(f"connector {seq} does not respect the ends {ends}")
    for u in seq[2:-2]:
        if not pool >> u & 1:
            raise AssertionError(f"connector vertex {u} outside the admissible pool")
    for i in range(1, k + 2):
        if not flt.ok(seq[i], seq[i + 1]):
            raise AssertionError(f"waypoint pair {(seq[i], seq[i + 1])} below beta")


def join_paths(
    g: ThreeGraph,
    hp: ThreeGraph,
    paths: Sequence[TightPath],
    forbidden: Iterable[int] = (),
    p: ConnectorParams = ConnectorParams(),
    rng: random.Random | None = None,
    close_cycle: bool = False,
    allowed: Iterable[int] | None = None,
    params_for=None,
):
    """Join ``paths`` in order; returns (vertex sequence, connectors).

    ``params_for(join_index, pool_size, joins_left)`` may supply per-join
    connector parameters; otherwise ``p`` is used throughout.
    """
    rng = rng or random.Random(0)
    if not paths:
        raise ValueError("nothing to join")
    seq = list(paths[0].seq)
    used = set(forbidden)
    for path in paths:
        used.update(path.seq)
    pool = set(range(g.n)) if allowed is None else set(allowed)
    connectors = []
    joins = len(paths) - 1 + (1 if close_cycle else 0)
    targets = [path.head for path in paths[1:]]
    if close_cycle:
        targets.append(None)
    for idx, head in enumerate(targets):
        tail = PathEnd(seq[-2], seq[-1])
        if head is None:
            head = PathEnd(seq[1], seq[0])
        free = pool - used
        jp = p if params_for is None else params_for(idx, len(free), joins - idx)
        try:
            c = connect_pair(g, hp, tail, head, used, jp, rng, allowed=free)
        except NoPath as exc:
            exc.diagnostics["join_index"] = idx
            raise
        internal = c.seq[2:-2]
        used.update(internal)
        connectors.append(c)
        seq.extend(internal)
        if idx < len(paths) - 1:
            seq.extend(paths[idx + 1].seq)
    return seq, connectors


def connect_chain(
    g: ThreeGraph,
    hp: ThreeGraph,
    paths: Sequence[TightPath],
    forbidden: Iterable[int] = (),
    p: ConnectorParams = ConnectorParams(),
    rng: random.Random | None = None,
    close_cycle: bool = False,
    allowed: Iterable[int] | None = None,
) -> TightPath | TightCycle:
    """Join vertex-disjoint paths into one path, or a cycle if ``close_cycle``."""
    if len(paths) == 1 and not close_cycle:
        return paths[0]
    seq, _ = join_paths(g, hp, paths, forbidden, p, rng, close_cycle, allowed)
    return TightCycle(seq) if close_cycle else TightPath(seq)
