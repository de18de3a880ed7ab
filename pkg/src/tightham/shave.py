"""Codegree shaving: spanning subgraphs where every pair has codegree 0 or a lot.

``purge`` deletes every edge through a pair of small positive codegree until
nothing changes. The surviving edge set is the unique largest subgraph in
which each pair has codegree 0 or at least ``tau``, so the order in which
pairs are processed only affects speed.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

from . import _kernels
from .errors import BoundViolation, PreconditionFailed
from .hypergraph import ThreeGraph, bits


@dataclass
class ShaveResult:
    subgraph: ThreeGraph
    zeroed_pairs: frozenset[tuple[int, int]]
    removed_edges: int
    threshold_used: float
    diagnostics: dict = field(default_factory=dict)

    def dichotomy_holds(self) -> bool:
        h = self.subgraph
        for x, y in combinations(range(h.n), 2):
            c = h.codegree(x, y)
            if c and c < self.threshold_used:
                return False
        return True


def _zero_pairs(h: ThreeGraph) -> frozenset[tuple[int, int]]:
    return frozenset(
        (x, y) for x, y in combinations(range(h.n), 2) if not h.nbr[x][y]
    )


def purge(g: ThreeGraph, tau: float, order: Sequence[tuple[int, int]] | None = None) -> ShaveResult:
    """Delete edges at pairs with ``0 < codegree < tau`` until stable.

    By default pairs are swept in ascending lexicographic order with the
    deletions of a sweep committed together. Passing ``order`` instead
    processes the given pairs one at a time, repeating the list until a full
    pass changes nothing; the result is the same either way.
    """
    if order is None:
        removed = _kernels.purge_removed(g, float(tau))
        h = g.copy()
        for e in removed:
            h.remove_edge(e)
    else:
        h = g.copy()
        changed = True
        while changed:
            changed = False
            for x, y in order:
                m = h.nbr[x][y]
                if m and m.bit_count() < tau:
                    for z in bits(m):
                        h.remove_edge((x, y, z))
                    changed = True
    return ShaveResult(h, _zero_pairs(h), g.num_edges() - h.num_edges(), float(tau))


def low_codegree_pairs(g: ThreeGraph, threshold: float) -> list[tuple[int, int]]:
    return [
        (x, y)
        for x, y in combinations(range(g.n), 2)
        if g.nbr[x][y].bit_count() < threshold
    ]


def strong_dense_subgraph(g: ThreeGraph, mu: float, theta: float) -> ShaveResult:
    """Spanning subgraph with codegrees ``>= (mu - 8 theta^(1/4))(n - 2)`` or 0.

    Requires at most ``theta * C(n, 2)`` pairs of codegree below
    ``mu (n - 2)``. The edge-loss and shadow-loss bounds are checked on the
    result and raise :class:`BoundViolation` if they fail.
    """
    n = g.n
    if n < 6:
        raise PreconditionFailed(f"need n >= 6, got {n}", n=n)
    if not (0 < mu < 1 and 0 < theta < 1):
        raise PreconditionFailed("mu and theta must lie in (0, 1)", mu=mu, theta=theta)
    pairs = math.comb(n, 2)
    low = len(low_codegree_pairs(g, mu * (n - 2)))
    if low > theta * pairs:
        raise PreconditionFailed(
            f"{low} pairs have codegree below mu(n-2); at most {theta * pairs:.2f} allowed",
            low_pairs=low,
            allowed=theta * pairs,
        )
    q = theta ** 0.25
    tau = (mu - 8 * q) * (n - 2)
    if tau > 0:
        res = purge(g, tau)
    else:
        # every pair clears a non-positive threshold
        res = ShaveResult(g.copy(), _zero_pairs(g), 0, tau)
    edge_cap = 48 * q * math.comb(n, 3)
    zero_cap = (theta + q) * pairs
    res.diagnostics.update(low_pairs=low, edge_loss_cap=edge_cap, zero_pair_cap=zero_cap)
    if res.removed_edges > edge_cap:
        raise BoundViolation(
            f"removed {res.removed_edges} edges, bound {edge_cap:.2f}",
            removed=res.removed_edges,
            bound=edge_cap,
        )
    if len(res.zeroed_pairs) > zero_cap:
        raise BoundViolation(
            f"{len(res.zeroed_pairs)} zero pairs, bound {zero_cap:.2f}",
            zeroed=len(res.zeroed_pairs),
            bound=zero_cap,
        )
    return res


def shave_graph(h: ThreeGraph, d: float, rho: float) -> ShaveResult:
    """Shave ``h`` so each pair has codegree ``>= d n / 3`` or 0.

    Runs the counting step first: the pairs of codegree below ``d(n-2)/2``
    must number at most ``(2 rho / d) C(n, 2)``, else
    :class:`PreconditionFailed`. The purge then runs at ``d n / 3`` and the
    shadow must keep at least ``(1 - rho^(1/5)) C(n, 2)`` pairs.
    """
    if not (0 < d <= 1) or rho <= 0:
        raise PreconditionFailed("need 0 < d <= 1 and rho > 0", d=d, rho=rho)
    n = h.n
    pairs = math.comb(n, 2)
    low = len(low_codegree_pairs(h, d * (n - 2) / 2))
    allowed = 2 * rho / d * pairs
    diag = {
        "low_pairs": low,
        "low_pairs_allowed": allowed,
        "proof_threshold": (d / 2 - 8 * (2 * rho / d) ** 0.25) * (n - 2),
        "in_asymptotic_regime": rho <= d**5 / (3**40 * 2**5),
    }
    if low > allowed:
        raise PreconditionFailed(
            f"{low} pairs have codegree below d(n-2)/2; the counting step allows {allowed:.2f}",
            **diag,
        )
    tau = d * n / 3
    res = purge(h, tau)
    res.diagnostics.update(diag)
    shadow_floor = (1 - rho ** 0.2) * pairs
    shadow = pairs - len(res.zeroed_pairs)
    res.diagnostics.update(shadow_pairs=shadow, shadow_floor=shadow_floor)
    if shadow < shadow_floor:
        raise BoundViolation(
            f"shadow has {shadow} pairs, bound {shadow_floor:.2f}", **res.diagnostics
        )
    return res
