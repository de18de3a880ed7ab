"""Seeded instance generators."""
from __future__ import annotations

import random
from itertools import combinations

from .errors import BadParams
from .hypergraph import ThreeGraph

KINDS = ("random", "complete", "tight_cycle", "split", "single_absorber")


def gen_random(n: int, p: float, seed: int = 0) -> ThreeGraph:
    """Binomial 3-graph: each triple independently with probability ``p``."""
    if n < 0 or not 0 <= p <= 1:
        raise BadParams(f"need n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    rng = random.Random(seed)
    g = ThreeGraph(n)
    for a, b, c in combinations(range(n), 3):
        if rng.random() < p:
            g._add_unchecked(a, b, c)
    return g


def gen_complete(n: int) -> ThreeGraph:
    if n < 0:
        raise BadParams("n must be non-negative")
    return ThreeGraph.complete(n)


def gen_tight_cycle(n: int) -> ThreeGraph:
    """Edges ``{i, i+1, i+2}`` mod ``n``."""
    if n < 3:
        raise BadParams(f"a tight cycle needs n >= 3, got {n}")
    return ThreeGraph(n, [(i, (i + 1) % n, (i + 2) % n) for i in range(n)])


def gen_split(n: int) -> ThreeGraph:
    """All triples inside ``X = {0..n//2-1}`` or inside ``Y`` (the rest)."""
    if n < 0:
        raise BadParams("n must be non-negative")
    h = n // 2
    edges = list(combinations(range(h), 3)) + list(combinations(range(h, n), 3))
    return ThreeGraph(n, edges)


def gen_single_absorber(n: int = 5) -> ThreeGraph:
    """The five absorber edges for ``v = 0`` and ``(x, y, z, w) = (1, 2, 3, 4)``."""
    if n < 5:
        raise BadParams(f"the absorber gadget needs n >= 5, got {n}")
    return ThreeGraph(n, [(1, 2, 3), (2, 3, 4), (0, 1, 2), (0, 2, 3), (0, 3, 4)])


def generate(kind: str, n: int, p: float | None = None, seed: int = 0) -> ThreeGraph:
    if kind == "random":
        if p is None:
            raise BadParams("kind 'random' needs p")
        return gen_random(n, p, seed)
    if kind == "complete":
        return gen_complete(n)
    if kind == "tight_cycle":
        return gen_tight_cycle(n)
    if kind == "split":
        return gen_split(n)
    if kind == "single_absorber":
        return gen_single_absorber(n)
    raise BadParams(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
