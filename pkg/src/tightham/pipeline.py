"""End-to-end construction of a tight Hamilton cycle by absorption.

Stages, each with its own named random stream:

1. shave the input to ``h'`` (codegree ``>= dn/3`` or 0);
2. sample a reservoir ``A`` and check its size, degree and codegree shares;
3. build an absorbing path ``P0`` with one absorber per vertex of ``A``;
4. cover ``h'`` minus ``P0`` and ``A`` by few tight paths, leaving ``U``;
5. swallow each ``u`` in ``U`` into a short path ``Q_u`` built inside ``A``;
6. chain everything into a cycle with connectors drawn from unused ``A``;
7. absorb the rest of ``A`` into ``P0``;
8. verify and emit a certificate.

Every hypothesis that the argument needs is checked at run time; a failed
check raises a stage-tagged :class:`PipelineError` instead of guessing.
"""
from __future__ import annotations

import logging
import math
import random
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

from .absorb import Absorber, AbsorberConstraint, absorber_path, find_absorber, skip_path
from .connect import ConnectorParams, join_paths
from .errors import (
    AbsorberFailed,
    BadEnds,
    BoundViolation,
    ConnectFailed,
    CoverTooSparse,
    NoPath,
    NotFound,
    PipelineError,
    PreconditionFailed,
    ReservoirFailed,
    ShaveFailed,
    SlotInvalid,
    VerificationFailed,
)
from .hypergraph import ThreeGraph, mask_of
from .pathcover import CoverParams, greedy_cover
from .paths import PathEnd, TightCycle, TightPath, is_tight_cycle, is_tight_path
from .rng import stage_rng
from .shave import shave_graph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineParams:
    d: float = 0.45
    rho: float = 0.02
    alpha: Optional[float] = None  # default: measured min degree / C(n, 2)
    sigma: Optional[float] = None  # default: max(min(1/132, d/33), 2/n)
    zeta: Optional[float] = None  # default: min(alpha sigma/72, d sigma/4320)
    l0: int = 20
    beta_connect: Optional[float] = None  # assembly, default d/20
    beta_absorbing: Optional[float] = None  # absorbing path, default d/6
    internal_len: int = 6
    reservoir_tries: int = 200
    strict_reservoir: bool = False
    cover_restarts: int = 5
    global_retries: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 < self.d <= 1:
            raise ValueError(f"d must lie in (0, 1], got {self.d}")
        if self.rho <= 0:
            raise ValueError("rho must be positive")
        for name in ("alpha", "sigma", "zeta", "beta_connect", "beta_absorbing"):
            v = getattr(self, name)
            if v is not None and not 0 < v <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")
        if self.l0 < 1 or self.internal_len < 0:
            raise ValueError("l0 must be positive and internal_len non-negative")
        if self.reservoir_tries < 1 or self.cover_restarts < 1 or self.global_retries < 1:
            raise ValueError("tries, restarts and retries must be positive")

    def resolved(self, g: ThreeGraph) -> dict:
        """Parameter values with every default filled in for ``g``."""
        n = g.n
        alpha = self.alpha
        if alpha is None:
            alpha = g.min_vertex_degree() / math.comb(n, 2) if n >= 2 else 0.0
        sigma = self.sigma
        if sigma is None:
            # the formula alone gives sigma * n < 2 below n = 264
            sigma = min(1.0, max(min(1 / 132, self.d / 33), 2 / n)) if n else 1.0
        zeta = self.zeta
        if zeta is None:
            zeta = min(alpha * sigma / 72, self.d * sigma / 4320)
        return {
            "d": self.d,
            "rho": self.rho,
            "alpha": alpha,
            "sigma": sigma,
            "zeta": zeta,
            "l0": self.l0,
            "beta_connect": self.beta_connect if self.beta_connect is not None else self.d / 20,
            "beta_absorbing": self.beta_absorbing if self.beta_absorbing is not None else self.d / 6,
            "internal_len": self.internal_len,
            "reservoir_tries": self.reservoir_tries,
            "strict_reservoir": self.strict_reservoir,
            "cover_restarts": self.cover_restarts,
            "global_retries": self.global_retries,
            "seed": self.seed,
        }


# -- reservoir ----------------------------------------------------------------
@dataclass
class ReservoirReport:
    A: frozenset[int]
    size_ok: bool
    degree_ok: bool
    codegree_ok: bool
    tries_used: int
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.size_ok and self.degree_ok and self.codegree_ok

    def summary(self) -> dict:
        return {
            "size": len(self.A),
            "size_ok": self.size_ok,
            "degree_ok": self.degree_ok,
            "codegree_ok": self.codegree_ok,
            "tries_used": self.tries_used,
            **self.witnesses,
        }


def check_reservoir(g: ThreeGraph, hp: ThreeGraph, A: Iterable[int], sigma: float) -> ReservoirReport:
    """Check the three reservoir properties of ``A`` exhaustively.

    (i) ``sigma n / 2 <= |A| <= 2 sigma n``;
    (ii) every vertex has ``deg(v, A) >= deg(v) sigma^2 / 2`` in ``g``;
    (iii) every pair of ``h'`` has codegree 0 or
    ``deg(xy, A) >= deg(xy) sigma / 2``.
    """
    A = frozenset(A)
    n = g.n
    amask = mask_of(A)
    size_ok = sigma * n / 2 <= len(A) <= 2 * sigma * n

    worst_v, worst_gap, bad_v = None, 0.0, 0
    for v in range(n):
        need = g.vertex_degree(v) * sigma**2 / 2
        gap = need - g.restricted_degree(v, amask)
        if gap > 0:
            bad_v += 1
            if gap > worst_gap:
                worst_v, worst_gap = v, gap

    worst_p, worst_pgap, bad_p = None, 0.0, 0
    for x, y in combinations(range(n), 2):
        m = hp.nbr[x][y]
        if not m:
            continue
        gap = m.bit_count() * sigma / 2 - (m & amask).bit_count()
        if gap > 0:
            bad_p += 1
            if gap > worst_pgap:
                worst_p, worst_pgap = (x, y), gap

    witnesses = {
        "degree_violations": bad_v,
        "worst_vertex": worst_v,
        "worst_vertex_shortfall": round(worst_gap, 6),
        "codegree_violations": bad_p,
        "worst_pair": list(worst_p) if worst_p else None,
        "worst_pair_shortfall": round(worst_pgap, 6),
    }
    return ReservoirReport(A, size_ok, bad_v == 0, bad_p == 0, 1, witnesses)


def sample_reservoir(
    g: ThreeGraph,
    hp: ThreeGraph,
    sigma: float,
    max_tries: int,
    rng: random.Random,
    strict: bool = True,
) -> ReservoirReport:
    """Rejection-sample ``A`` (each vertex with probability ``sigma``).

    Returns the first sample passing all three checks. If none does within
    ``max_tries``, ``strict`` raises :class:`ReservoirFailed`.

    Without ``strict``, a sample must also fit: its absorbers, itself and
    two connector vertices per join need ``7|A| - 2 <= n``. The first sample
    that passes and fits is returned; failing that, the best sample ranked
    by size check, fit, degree check and then fewest vertices, with its
    violations recorded.
    """
    n = g.n
    if sigma * n < 2 - 1e-9:
        raise ReservoirFailed(
            f"sigma * n = {sigma * n:.3f} is below 2; the reservoir would be degenerate",
            sigma=sigma,
            n=n,
        )
    best, best_key = None, None
    for t in range(max_tries):
        A = [v for v in range(n) if rng.random() < sigma]
        rep = check_reservoir(g, hp, A, sigma)
        rep.tries_used = t + 1
        fits = 7 * len(rep.A) - 2 <= n
        if rep.ok and (strict or fits):
            return rep
        key = (not rep.size_ok, not fits, not rep.degree_ok, len(rep.A), t)
        if best_key is None or key < best_key:
            best, best_key = rep, key
    best.tries_used = max_tries
    if strict or not best.size_ok or not best.A or 7 * len(best.A) - 2 > n:
        raise ReservoirFailed(
            f"no reservoir sample passed all checks in {max_tries} tries",
            **best.summary(),
        )
    return best


# -- absorbing path -----------------------------------------------------------
@dataclass
class AbsorbingPathRecord:
    """An absorbing path ``P0`` and, for each reservoir vertex, its slot.

    ``slots[v] = i`` means ``path.seq[i:i+4]`` is the quad of ``v``'s
    absorber, so ``v`` can be inserted between positions ``i+1`` and ``i+2``.
    """

    path: TightPath
    slots: dict[int, int]
    host: ThreeGraph = field(repr=False)
    absorbers: dict[int, Absorber] = field(default_factory=dict, repr=False)
    connector_lengths: list[int] = field(default_factory=list)

    @property
    def ends(self) -> tuple[PathEnd, PathEnd]:
        return (self.path.head, self.path.tail)


def _budget_params(base: ConnectorParams, k_max: int, no_strand: bool = False):
    """Per-join parameters that spread a shared vertex pool over the joins.

    A join with ``pool`` free vertices and ``left`` joins still to make
    targets ``min(k_max, pool // (left + 1))`` internal vertices, so every
    join keeps at least as many spare vertices as it uses, and falls back
    to shorter and then longer connectors.

    With ``no_strand`` the last join takes the whole pool when it would
    otherwise leave 1 or 2 vertices, which no tight path can cover.
    """

    def params_for(idx: int, pool: int, left: int) -> ConnectorParams:
        k = min(k_max, pool // (left + 1))
        if no_strand and left == 1 and 0 < pool - k < 3 and pool <= k_max:
            k = pool
        return ConnectorParams(
            internal_len=k,
            beta_threshold=base.beta_threshold,
            beam=base.beam,
            allow_len_range=(0, min(k_max, pool)),
            retries=base.retries,
        )

    return params_for


def _locate_slots(seq, absorbers: dict[int, Absorber]) -> dict[int, int]:
    pos = {u: i for i, u in enumerate(seq)}
    slots = {}
    for v, a in absorbers.items():
        i = pos[a.x]
        if tuple(seq[i:i + 4]) != a.quad:
            raise AssertionError(f"absorber of {v} is not contiguous in the path")
        slots[v] = i
    return slots


def build_absorbing_path(
    g: ThreeGraph,
    hp: ThreeGraph,
    A: Iterable[int],
    params: PipelineParams,
    rng: random.Random,
) -> AbsorbingPathRecord:
    """Absorbers for every ``v`` in ``A`` (disjoint, avoiding ``A``), chained.

    Each absorber's boundary pairs have ``h'``-codegree at least ``dn/3``.
    The 4-vertex skip paths are joined tail ``(z, w)`` to the next head
    ``(y', x')`` through vertices outside ``A`` and the absorbers, with
    waypoint pairs of ``h'``-codegree at least ``beta_absorbing * n``.
    """
    n = g.n
    A = sorted(set(A))
    if not A:
        raise ValueError("the reservoir is empty")
    d = params.d
    if len(A) > d * n / 66:
        log.info("|A| = %d exceeds dn/66 = %.2f; proceeding", len(A), d * n / 66)
    used = set(A)
    absorbers: dict[int, Absorber] = {}
    for v in A:
        c = AbsorberConstraint(
            forbidden=frozenset(used - {v}),
            shadow_graph=hp,
            pair_threshold=d * n / 3,
        )
        try:
            a = find_absorber(g, v, c, rng)
        except NotFound as exc:
            raise AbsorberFailed(f"no absorber for reservoir vertex {v}", **exc.diagnostics) from exc
        absorbers[v] = a
        used.update(a.quad)

    pieces = [skip_path(absorbers[v]) for v in A]
    beta = params.beta_absorbing if params.beta_absorbing is not None else d / 6
    base = ConnectorParams(internal_len=params.internal_len, beta_threshold=beta * n)
    free = set(range(n)) - used
    try:
        seq, connectors = join_paths(
            g, hp, pieces, forbidden=used, p=base, rng=rng,
            allowed=free, params_for=_budget_params(base, params.internal_len, no_strand=True),
        )
    except (NoPath, BadEnds) as exc:
        raise ConnectFailed(f"absorbing path: {exc}", **exc.diagnostics) from exc
    path = TightPath(seq)
    if not is_tight_path(g, path.seq):
        raise VerificationFailed("absorbing path is not tight")
    if len(path) > 11 * len(A):
        raise BoundViolation(f"absorbing path has {len(path)} vertices, cap {11 * len(A)}")
    rec = AbsorbingPathRecord(
        path, _locate_slots(seq, absorbers), g, absorbers, [len(c) - 4 for c in connectors]
    )
    return rec


def absorb_into(rec: AbsorbingPathRecord, extra: Iterable[int]) -> TightPath:
    """Insert each ``v`` in ``extra`` into its absorber; the ends are unchanged."""
    extra = set(extra)
    if not extra:
        return rec.path
    on_path = rec.path.vertices
    after = {}
    for v in extra:
        if v not in rec.slots:
            raise SlotInvalid(f"vertex {v} has no slot in the absorbing path", v=v)
        if v in on_path:
            raise SlotInvalid(f"vertex {v} is already on the path", v=v)
        after[rec.slots[v] + 1] = v
    seq = rec.path.seq
    g = rec.host
    out = []
    for i, u in enumerate(seq):
        out.append(u)
        v = after.get(i)
        if v is not None:
            x, y, z, w = seq[i - 1:i + 3]
            if not (g.has_edge(x, y, v) and g.has_edge(y, v, z) and g.has_edge(v, z, w)):
                raise SlotInvalid(f"slot of {v} no longer absorbs it", v=v, quad=[x, y, z, w])
            out.append(v)
    return TightPath(out)


# -- certificate --------------------------------------------------------------
@dataclass
class HamiltonCertificate:
    n: int
    order: tuple[int, ...]
    params: dict
    stages: dict

    def verify(self, g: ThreeGraph) -> bool:
        return g.n == self.n and is_tight_cycle(g, self.order, range(g.n))

    def to_dict(self) -> dict:
        return asdict(self)


# -- the pipeline ---------------------------------------------------------------
def _shave(g: ThreeGraph, d: float, rho: float):
    try:
        return shave_graph(g, d, rho)
    except (PreconditionFailed, BoundViolation) as exc:
        raise ShaveFailed(str(exc), **exc.diagnostics) from exc


def _attempt(g: ThreeGraph, hp: ThreeGraph, params: PipelineParams, rp: dict, seed: int) -> tuple[list[int], dict]:
    n = g.n
    d = params.d
    stages: dict = {}

    res = sample_reservoir(
        g, hp, rp["sigma"], params.reservoir_tries, stage_rng(seed, "reservoir"),
        strict=params.strict_reservoir,
    )
    A = set(res.A)
    stages["reservoir"] = res.summary()

    rec = build_absorbing_path(g, hp, A, params, stage_rng(seed, "absorbing"))
    p0 = rec.path
    stages["absorbing_path"] = {
        "reservoir": len(A),
        "vertices": len(p0),
        "connector_lengths": rec.connector_lengths,
    }

    rest = sorted(set(range(n)) - p0.vertices - A)
    h2, labels = hp.induced_subgraph(rest)
    cp = CoverParams(
        zeta=rp["zeta"], l0=params.l0, restarts=params.cover_restarts,
        seed=stage_rng(seed, "cover").getrandbits(32), n_ref=n,
    )
    cover = greedy_cover(h2, cp)
    cover_paths = [TightPath([labels[u] for u in p.seq]) for p in cover.paths]
    U = sorted(labels[u] for u in cover.leftover)
    stages["cover"] = {"host_vertices": len(rest), "paths": len(cover_paths), "leftover": len(U)}

    ends = set()
    for p in [p0, *cover_paths]:
        ends.update((p.seq[0], p.seq[1], p.seq[-2], p.seq[-1]))
    a_star = frozenset(A | set(U) | ends)
    free_a = set(A)
    q_paths = []
    qrng = stage_rng(seed, "leftover")
    for u in U:
        c = AbsorberConstraint(
            forbidden=frozenset(set(range(n)) - free_a - {u}),
            shadow_graph=hp,
            pair_threshold=d * len(a_star) / 18,
            allowed=frozenset(free_a),
            shadow_within=a_star,
        )
        try:
            a = find_absorber(g, u, c, qrng)
        except NotFound as exc:
            raise AbsorberFailed(f"no absorber inside the reservoir for leftover vertex {u}",
                                 v=u, free_reservoir=len(free_a)) from exc
        free_a -= set(a.quad)
        q_paths.append(absorber_path(a))
    stages["leftover_paths"] = len(q_paths)

    chain = [p0, *cover_paths, *q_paths]
    beta = rp["beta_connect"]
    base = ConnectorParams(internal_len=params.internal_len, beta_threshold=max(beta * len(a_star), 1e-9))
    try:
        seq, connectors = join_paths(
            g, hp, chain, rng=stage_rng(seed, "assembly"), close_cycle=True,
            allowed=free_a, params_for=_budget_params(base, params.internal_len),
        )
    except (NoPath, BadEnds) as exc:
        raise ConnectFailed(f"assembly: {exc}", **exc.diagnostics) from exc
    lengths = [len(c) - 4 for c in connectors]
    internal = {u for c in connectors for u in c.seq[2:-2]}
    if not internal <= a_star:
        raise AssertionError("assembly connectors left the reservoir")
    unused = free_a - internal
    stages["assembly"] = {"joins": len(connectors), "connector_lengths": lengths, "absorbed": len(unused)}

    total = len(p0) + sum(map(len, cover_paths)) + sum(map(len, q_paths)) + sum(lengths) + len(unused)
    if total != n:
        raise AssertionError(f"vertex accounting gives {total}, expected {n}")
    if tuple(seq[:len(p0)]) != p0.seq:
        raise AssertionError("absorbing path is not a prefix of the assembled cycle")

    p0_full = absorb_into(rec, unused)
    order = list(p0_full.seq) + seq[len(p0):]
    return order, stages


def find_tight_hamilton(g: ThreeGraph, params: PipelineParams = PipelineParams()) -> HamiltonCertificate:
    """Run the absorption pipeline; returns a verified certificate.

    Random stages retry with seeds ``seed, seed + 1, ...`` up to
    ``global_retries`` times; the last stage failure is re-raised.
    """
    n = g.n
    rp = params.resolved(g)
    min_deg = g.min_vertex_degree() if n else 0
    shaved = _shave(g, params.d, params.rho)
    hp = shaved.subgraph
    shave_log = {
        "removed_edges": shaved.removed_edges,
        "zeroed_pairs": len(shaved.zeroed_pairs),
        "threshold": round(shaved.threshold_used, 6),
    }
    checks = {
        "min_degree": min_deg,
        "alpha_check": n >= 2 and min_deg >= rp["alpha"] * math.comb(n, 2) - 1e-9,
        "reservoir_within_dn66": None,
    }
    last: PipelineError | None = None
    for attempt in range(params.global_retries):
        seed = params.seed + attempt
        try:
            order, stages = _attempt(g, hp, params, rp, seed)
        except (AbsorberFailed, ConnectFailed, CoverTooSparse, ReservoirFailed) as exc:
            log.info("attempt %d failed at %s: %s", attempt, exc.stage, exc)
            last = exc
            continue
        if not is_tight_cycle(g, order, range(n)):
            raise VerificationFailed("assembled order is not a tight Hamilton cycle", order=order)
        cyc = TightCycle(order).rotated_to(0)
        checks["reservoir_within_dn66"] = stages["reservoir"]["size"] <= params.d * n / 66
        stages = {"shave": shave_log, "checks": checks, **stages, "attempt": attempt, "seed_used": seed}
        return HamiltonCertificate(n, cyc.order, rp, stages)
    assert last is not None
    last.diagnostics.setdefault("attempts", params.global_retries)
    raise last
