"""Cover almost every vertex with few vertex-disjoint tight paths.

Randomized greedy: seed a path at a random edge inside the available
vertices, extend both ends while possible, repeat. Several independent
restarts are run and the best is kept.
"""
from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Optional

from .errors import CoverTooSparse
from .hypergraph import ThreeGraph, bits, mask_of
from .paths import TightPath
from .rng import derive_seed


@dataclass(frozen=True)
class CoverParams:
    zeta: float = 0.05
    l0: int = 20
    restarts: int = 5
    seed: int = 0
    # the leftover target is zeta * n_ref; defaults to the host's n
    n_ref: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 < self.zeta <= 1:
            raise ValueError(f"zeta must lie in (0, 1], got {self.zeta}")
        if self.l0 < 1:
            raise ValueError("l0 must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")


@dataclass
class CoverResult:
    paths: list[TightPath]
    leftover: frozenset[int]
    restart: int = 0
    stats: dict = field(default_factory=dict)

    def covered(self) -> int:
        return sum(len(p) for p in self.paths)


def extend_path(
    g: ThreeGraph, path: TightPath, available: Iterable[int] | int, rng: random.Random
) -> TightPath:
    """Grow ``path`` greedily at both ends using vertices from ``available``.

    Each step appends a uniformly random admissible vertex; the end tried
    first alternates between steps. Stops when neither end can grow.
    """
    avail = available if isinstance(available, int) else mask_of(available)
    avail &= ~mask_of(path.seq)
    seq = deque(path.seq)
    nbr = g.nbr
    step = 0
    while avail:
        grown = False
        for side in ((1, 0) if step % 2 == 0 else (0, 1)):
            if side:
                cands = nbr[seq[-2]][seq[-1]] & avail
            else:
                cands = nbr[seq[0]][seq[1]] & avail
            if cands:
                z = rng.choice(bits(cands))
                if side:
                    seq.append(z)
                else:
                    seq.appendleft(z)
                avail &= ~(1 << z)
                grown = True
                break
        if not grown:
            break
        step += 1
    return TightPath(tuple(seq))


def _seed_edge(g: ThreeGraph, edges: list, avail: int, rng: random.Random):
    if not edges:
        return None
    for _ in range(64):
        e = edges[rng.randrange(len(edges))]
        if all(avail >> v & 1 for v in e):
            return e
    inside = [e for e in edges if all(avail >> v & 1 for v in e)]
    return rng.choice(inside) if inside else None


def _one_run(g: ThreeGraph, l0: int, rng: random.Random) -> tuple[list[TightPath], int]:
    avail = mask_of(range(g.n))
    edges = g.edge_list()
    paths: list[TightPath] = []
    while len(paths) < l0:
        e = _seed_edge(g, edges, avail, rng)
        if e is None:
            break
        start = list(e)
        rng.shuffle(start)
        avail &= ~mask_of(start)
        path = extend_path(g, TightPath(start), avail, rng)
        avail &= ~mask_of(path.seq)
        paths.append(path)
    return paths, avail


def greedy_cover(g: ThreeGraph, p: CoverParams = CoverParams()) -> CoverResult:
    """Best of ``p.restarts`` greedy covers.

    Runs are ranked by leftover size, then path count, then restart index.
    Raises :class:`CoverTooSparse` (carrying the best result as ``.best``)
    when the leftover exceeds ``zeta * n_ref``.
    """
    best = None
    key = None
    for r in range(p.restarts):
        rng = random.Random(derive_seed(p.seed, "cover", r))
        paths, left = _one_run(g, p.l0, rng)
        k = (left.bit_count(), len(paths), r)
        if key is None or k < key:
            key = k
            best = CoverResult(paths, frozenset(bits(left)), r)
    n_ref = g.n if p.n_ref is None else p.n_ref
    target = p.zeta * n_ref
    best.stats = {"leftover": len(best.leftover), "paths": len(best.paths), "target": target}
    if len(best.leftover) > target:
        raise CoverTooSparse(
            f"best cover leaves {len(best.leftover)} vertices, target {target:.2f}",
            best=best,
            leftover=len(best.leftover),
            paths=len(best.paths),
            target=target,
        )
    return best
