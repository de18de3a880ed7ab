from __future__ import annotations

import itertools
import random

import pytest

from tightham.generators import gen_random
from tightham.shave import shave_graph

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion: str, passed: bool, detail: str) -> None:
    """Register one acceptance line; printed in the terminal summary."""
    _ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {detail}")


# -- brute-force references, independent of the package internals -----------
def edge_set(g) -> set[frozenset]:
    return {frozenset(e) for e in g.edge_list()}


def brute_is_tight_cycle(edges: set[frozenset], order) -> bool:
    m = len(order)
    if m < 5 or len(set(order)) != m:
        return False
    return all(frozenset((order[i], order[(i + 1) % m], order[(i + 2) % m])) in edges for i in range(m))


def brute_hamilton(g):
    """First permutation (fixing vertex 0 first) that is a tight cycle, or None."""
    n = g.n
    if n < 5:
        return None
    edges = edge_set(g)
    for rest in itertools.permutations(range(1, n)):
        order = (0,) + rest
        if brute_is_tight_cycle(edges, order):
            return order
    return None


def brute_absorbers(g, v) -> set[tuple[int, int, int, int]]:
    edges = edge_set(g)
    others = [u for u in range(g.n) if u != v]
    out = set()
    for x, y, z, w in itertools.permutations(others, 4):
        need = ((x, y, z), (y, z, w), (v, x, y), (v, y, z), (v, z, w))
        if all(frozenset(t) in edges for t in need):
            out.add((x, y, z, w))
    return out


def brute_purge(g, tau: float) -> set[frozenset]:
    """Largest edge subset where every pair has codegree 0 or >= tau.

    Deletes edges at one violating pair at a time, rescanning from scratch.
    """
    edges = edge_set(g)
    while True:
        cod: dict[frozenset, int] = {}
        for e in edges:
            for p in itertools.combinations(e, 2):
                cod[frozenset(p)] = cod.get(frozenset(p), 0) + 1
        bad = [p for p, c in cod.items() if c < tau]
        if not bad:
            return edges
        p = bad[0]
        edges = {e for e in edges if not p <= e}


def random_small_graph(rng: random.Random, n: int, p: float):
    return gen_random(n, p, seed=rng.randrange(1 << 30))


@pytest.fixture(scope="session")
def g100():
    return gen_random(100, 0.5, seed=1)


@pytest.fixture(scope="session")
def g100_shaved(g100):
    return shave_graph(g100, 0.45, 0.02).subgraph
