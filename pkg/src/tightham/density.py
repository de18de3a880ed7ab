"""Checkers and falsifiers for cherry-, edge- and points-denseness.

A 3-graph ``H`` on ``n`` vertices is (rho, d)-cherry-dense when, for all
digraphs ``G1, G2`` on ``V(H)``,

    e_H(G1, G2) >= d * |P2(G1, G2)| - rho * n**3,

where ``P2`` is the set of ``(x, y, z)`` with ``(x, y) in G1`` and
``(y, z) in G2``. ``P2`` counts triples with repeated vertices; ``e_H``
never does, since a repeated triple is never an edge.

Checking the quantifier exactly is hopeless (2**(n*n) digraphs), so the
falsifiers are sound but incomplete: any witness they return is re-verified
by exact counting, and "no witness" proves nothing.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import ThreeGraph


class Digraph:
    """A set of ordered pairs over ``range(n)``, stored as a boolean matrix.

    Loops ``(x, x)`` are allowed.
    """

    __slots__ = ("n", "mat")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()) -> None:
        self.n = n
        self.mat = np.zeros((n, n), dtype=bool)
        for x, y in arcs:
            self.mat[x, y] = True

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "Digraph":
        g = cls.__new__(cls)
        g.mat = np.asarray(mat, dtype=bool).copy()
        g.n = g.mat.shape[0]
        return g

    @classmethod
    def product(cls, n: int, xs: Iterable[int], ys: Iterable[int]) -> "Digraph":
        mat = np.zeros((n, n), dtype=bool)
        mat[np.ix_(sorted(set(xs)), sorted(set(ys)))] = True
        return cls.from_matrix(mat)

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        return cls.from_matrix(np.ones((n, n), dtype=bool))

    def arcs(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.mat)]

    def __len__(self) -> int:
        return int(self.mat.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and bool((self.mat == other.mat).all())

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self)})"


@dataclass(frozen=True)
class DensityParams:
    d: float
    rho: float

    def __post_init__(self) -> None:
        if not 0 < self.d <= 1:
            raise ValueError(f"d must lie in (0, 1], got {self.d}")
        if self.rho < 0:
            raise ValueError(f"rho must be non-negative, got {self.rho}")


@dataclass
class DensityWitness:
    """A violated instance of a denseness inequality.

    ``objects`` holds the quantified sets: ``g1, g2`` (cherry), ``x, y, z``
    (points) or ``x, g`` (edge).
    """

    kind: str
    objects: dict = field(repr=False)
    observed: int
    bound: float
    deficit: float

    def recheck(self, h: ThreeGraph, p: DensityParams) -> "DensityWitness | None":
        o = self.objects
        if self.kind == "cherry":
            return check_cherry(h, o["g1"], o["g2"], p)
        if self.kind == "points":
            return check_points(h, o["x"], o["y"], o["z"], p)
        return check_edge(h, o["x"], o["g"], p)


def _edge_tensor(h: ThreeGraph) -> np.ndarray:
    return h.dense().astype(np.int64)


def _as_indicator(n: int, xs) -> np.ndarray:
    if isinstance(xs, np.ndarray) and xs.dtype == bool:
        return xs
    v = np.zeros(n, dtype=bool)
    v[list(xs)] = True
    return v


def _same_range(h: ThreeGraph, *gs: Digraph) -> None:
    for g in gs:
        if g.n != h.n:
            raise ValueError(f"digraph on {g.n} vertices, graph on {h.n}")


def p2_count(g1: Digraph, g2: Digraph) -> int:
    if g1.n != g2.n:
        raise ValueError("digraphs over different vertex ranges")
    indeg = g1.mat.sum(axis=0, dtype=np.int64)
    outdeg = g2.mat.sum(axis=1, dtype=np.int64)
    return int(indeg @ outdeg)


def cherry_edge_count(h: ThreeGraph, g1: Digraph, g2: Digraph) -> int:
    _same_range(h, g1, g2)
    e = _edge_tensor(h)
    # m[x, y] = #{z : (y, z) in G2, xyz in E}
    m = np.einsum("xyz,yz->xy", e, g2.mat.astype(np.int64))
    return int((m * g1.mat).sum())


def _verdict(kind, objects, observed, bound) -> DensityWitness | None:
    if observed >= bound:
        return None
    return DensityWitness(kind, objects, int(observed), float(bound), float(bound - observed))


def check_cherry(h: ThreeGraph, g1: Digraph, g2: Digraph, p: DensityParams) -> DensityWitness | None:
    """``None`` if the cherry inequality holds for ``(g1, g2)``, else a witness."""
    n = h.n
    bound = p.d * p2_count(g1, g2) - p.rho * n**3
    return _verdict("cherry", {"g1": g1, "g2": g2}, cherry_edge_count(h, g1, g2), bound)


def points_edge_count(h: ThreeGraph, xs, ys, zs) -> int:
    n = h.n
    x, y, z = (_as_indicator(n, s).astype(np.int64) for s in (xs, ys, zs))
    return int(np.einsum("xyz,x,y,z->", _edge_tensor(h), x, y, z))


def check_points(h: ThreeGraph, xs, ys, zs, p: DensityParams) -> DensityWitness | None:
    n = h.n
    x, y, z = (_as_indicator(n, s) for s in (xs, ys, zs))
    bound = p.d * int(x.sum()) * int(y.sum()) * int(z.sum()) - p.rho * n**3
    observed = points_edge_count(h, x, y, z)
    objs = {"x": set(np.flatnonzero(x).tolist()), "y": set(np.flatnonzero(y).tolist()),
            "z": set(np.flatnonzero(z).tolist())}
    return _verdict("points", objs, observed, bound)


def edge_edge_count(h: ThreeGraph, xs, g: Digraph) -> int:
    _same_range(h, g)
    x = _as_indicator(h.n, xs).astype(np.int64)
    return int(np.einsum("xyz,x,yz->", _edge_tensor(h), x, g.mat.astype(np.int64)))


def check_edge(h: ThreeGraph, xs, g: Digraph, p: DensityParams) -> DensityWitness | None:
    n = h.n
    x = _as_indicator(n, xs)
    bound = p.d * int(x.sum()) * len(g) - p.rho * n**3
    observed = edge_edge_count(h, x, g)
    return _verdict("edge", {"x": set(np.flatnonzero(x).tolist()), "g": g}, observed, bound)


# -- witness conversions along the cherry => edge => points hierarchy -------
def points_to_edge(w: DensityWitness, n: int) -> tuple[set, Digraph]:
    o = w.objects
    return set(o["x"]), Digraph.product(n, o["y"], o["z"])


def points_to_cherry(w: DensityWitness, n: int) -> tuple[Digraph, Digraph]:
    o = w.objects
    return Digraph.product(n, o["x"], o["y"]), Digraph.product(n, o["y"], o["z"])


# -- falsification ------------------------------------------------------------
@dataclass
class DescentTrace:
    """Objective values visited by one restart (for the descent check)."""

    restart: int
    values: list[float]


class DescentError(AssertionError):
    pass


def _weights(h: ThreeGraph, d: float) -> np.ndarray:
    # 1[E](xyz) - d over all of V^3; repeated triples carry weight -d
    return h.dense().astype(np.float64) - d


def _descend_cherry(w: np.ndarray, g2: np.ndarray, iterations: int, trace: list[float]):
    """Alternating best responses from a starting G2.

    Returns the best (objective, G1, G2) visited. The objective is
    ``e - d|P2|``; each half-step minimises it exactly, so it never rises.
    """
    n = w.shape[0]
    tol = 1e-9 * max(1.0, float(n) ** 3)
    g1 = np.zeros((n, n), dtype=bool)
    best = (np.inf, g1, g2)
    prev = np.inf
    for _ in range(iterations):
        m1 = np.einsum("xyz,yz->xy", w, g2)
        g1 = m1 < 0  # zero marginals excluded
        f1 = float(m1[g1].sum())
        if f1 > prev + tol:
            raise DescentError(f"objective rose from {prev} to {f1}")
        m2 = np.einsum("xyz,xy->yz", w, g1)
        g2_new = m2 < 0
        f2 = float(m2[g2_new].sum())
        if f2 > f1 + tol:
            raise DescentError(f"objective rose from {f1} to {f2}")
        trace.extend((f1, f2))
        if f2 < best[0]:
            best = (f2, g1.copy(), g2_new.copy())
        if np.array_equal(g2_new, g2):
            break
        g2 = g2_new
        prev = f2
    return best


def _cherry_start(n: int, restart: int, rng: np.random.Generator) -> np.ndarray:
    if restart == 0:
        return np.ones((n, n), dtype=bool)
    if restart % 2 == 1:
        # structured start Y x X for a random bipartition
        side = rng.random(n) < 0.5
        return np.outer(~side, side)
    return rng.random((n, n)) < 0.5


def falsify_cherry(
    h: ThreeGraph,
    p: DensityParams,
    restarts: int = 20,
    iterations: int = 50,
    seed: int = 0,
    traces: list | None = None,
) -> DensityWitness | None:
    """Search for a cherry-denseness violation by alternating descent.

    Restart ``r`` draws its start from ``numpy.random.default_rng([seed, r])``.
    Among violating restarts the largest deficit wins, ties to the lowest
    index. The returned witness comes from :func:`check_cherry`.
    """
    n = h.n
    if n == 0:
        return None
    w = _weights(h, p.d)
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        trace: list[float] = []
        f, g1, g2 = _descend_cherry(w, _cherry_start(n, r, rng), iterations, trace)
        if traces is not None:
            traces.append(DescentTrace(r, trace))
        if not np.isfinite(f):
            continue
        wit = check_cherry(h, Digraph.from_matrix(g1), Digraph.from_matrix(g2), p)
        if wit is not None and (best is None or wit.deficit > best.deficit):
            best = wit
    return best


def _descend_points(w: np.ndarray, y: np.ndarray, z: np.ndarray, iterations: int):
    best = (np.inf, None)
    x = np.zeros_like(y)
    for _ in range(iterations):
        old = (x.copy(), y.copy(), z.copy())
        mx = np.einsum("xyz,y,z->x", w, y, z)
        x = mx < 0
        my = np.einsum("xyz,x,z->y", w, x, z)
        y = my < 0
        mz = np.einsum("xyz,x,y->z", w, x, y)
        z = mz < 0
        f = float(mz[z].sum())
        if f < best[0]:
            best = (f, (x.copy(), y.copy(), z.copy()))
        if all(np.array_equal(a, b) for a, b in zip(old, (x, y, z))):
            break
    return best


def falsify_points(
    h: ThreeGraph, p: DensityParams, restarts: int = 20, iterations: int = 50, seed: int = 0
) -> DensityWitness | None:
    """Alternating descent over vertex-set triples ``(X, Y, Z)``."""
    n = h.n
    if n == 0:
        return None
    w = _weights(h, p.d)
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        if r == 0:
            y = z = np.ones(n, dtype=bool)
        else:
            y, z = rng.random(n) < 0.5, rng.random(n) < 0.5
        f, sets = _descend_points(w, y, z, iterations)
        if sets is None or not np.isfinite(f):
            continue
        wit = check_points(h, *sets, p)
        if wit is not None and (best is None or wit.deficit > best.deficit):
            best = wit
    return best


def falsify_edge(
    h: ThreeGraph, p: DensityParams, restarts: int = 20, iterations: int = 50, seed: int = 0
) -> DensityWitness | None:
    """Alternating descent over ``(X, G)`` with ``G`` a digraph."""
    n = h.n
    if n == 0:
        return None
    w = _weights(h, p.d)
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        g = np.ones((n, n), dtype=bool) if r == 0 else rng.random((n, n)) < 0.5
        x = np.zeros(n, dtype=bool)
        for _ in range(iterations):
            mx = np.einsum("xyz,yz->x", w, g)
            x_new = mx < 0
            mg = np.einsum("xyz,x->yz", w, x_new)
            g_new = mg < 0
            done = np.array_equal(x_new, x) and np.array_equal(g_new, g)
            x, g = x_new, g_new
            if done:
                break
        wit = check_edge(h, x, Digraph.from_matrix(g), p)
        if wit is not None and (best is None or wit.deficit > best.deficit):
            best = wit
    return best


def estimate_rho_hat(h: ThreeGraph, d: float, samples: int = 8, seed: int = 0, iterations: int = 20) -> float:
    """Largest observed ``(d|P2| - e) / n**3`` over sampled, descended states.

    An empirical lower bound on the least rho for which ``h`` is
    (rho, d)-cherry-dense; floored at 0.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    n = h.n
    if n == 0:
        return 0.0
    w = _weights(h, d)
    worst = 0.0
    for r in range(samples):
        rng = np.random.default_rng([seed, r])
        f, _, _ = _descend_cherry(w, _cherry_start(n, r, rng), iterations, [])
        if np.isfinite(f):
            worst = max(worst, -f)
    # the start states themselves are candidates too (V x V in particular)
    full = np.ones((n, n), dtype=bool)
    worst = max(worst, -float(np.einsum("xyz,xy,yz->", w, full, full)))
    return max(0.0, worst / n**3)
