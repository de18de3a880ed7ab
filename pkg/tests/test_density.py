from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightham import (
    DensityParams,
    Digraph,
    ThreeGraph,
    check_cherry,
    check_edge,
    check_points,
    estimate_rho_hat,
    falsify_cherry,
    falsify_edge,
    falsify_points,
    new_graph,
)
from tightham.density import (
    cherry_edge_count,
    edge_edge_count,
    p2_count,
    points_edge_count,
    points_to_cherry,
    points_to_edge,
)
from tightham.generators import gen_random, gen_split


def brute_cherry_count(h, g1, g2):
    n = h.n
    total = 0
    for x, y, z in itertools.product(range(n), repeat=3):
        if g1.mat[x, y] and g2.mat[y, z] and len({x, y, z}) == 3 and h.has_edge(x, y, z):
            total += 1
    return total


def brute_p2(g1, g2):
    n = g1.n
    return sum(1 for x, y, z in itertools.product(range(n), repeat=3) if g1.mat[x, y] and g2.mat[y, z])


def test_p2_examples():
    n = 5
    assert p2_count(Digraph(n), Digraph.complete(n)) == 0
    assert p2_count(Digraph.complete(n), Digraph.complete(n)) == n**3
    assert p2_count(Digraph(n, [(0, 1)]), Digraph(n, [(1, 2), (1, 3)])) == 2


def test_cherry_count_examples():
    assert cherry_edge_count(new_graph(6), Digraph.complete(6), Digraph.complete(6)) == 0
    n = 8
    k = ThreeGraph.complete(n)
    full = Digraph.complete(n)
    got = cherry_edge_count(k, full, full)
    assert got == n**3 - (3 * n**2 - 2 * n)
    assert got == brute_cherry_count(k, full, full)
    h = ThreeGraph(3, [(0, 1, 2)])
    assert cherry_edge_count(h, Digraph(3, [(0, 1)]), Digraph(3, [(1, 2)])) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10**6))
def test_counts_match_brute_force(n, seed):
    rng = np.random.default_rng(seed)
    h = gen_random(n, 0.5, seed)
    g1 = Digraph.from_matrix(rng.random((n, n)) < 0.5)
    g2 = Digraph.from_matrix(rng.random((n, n)) < 0.5)
    assert p2_count(g1, g2) == brute_p2(g1, g2)
    assert cherry_edge_count(h, g1, g2) == brute_cherry_count(h, g1, g2)
    xs, ys, zs = (set(np.flatnonzero(rng.random(n) < 0.5)) for _ in range(3))
    brute_pts = sum(1 for x in xs for y in ys for z in zs if h.has_edge(x, y, z))
    assert points_edge_count(h, xs, ys, zs) == brute_pts
    brute_edge = sum(1 for x in xs for y, z in g1.arcs() if h.has_edge(x, y, z))
    assert edge_edge_count(h, xs, g1) == brute_edge


def test_check_cherry_examples():
    p = DensityParams(0.25, 0.001)
    split = gen_split(12)
    X, Y = range(6), range(6, 12)
    assert check_cherry(split, Digraph(12), Digraph.complete(12), p) is None
    w = check_cherry(split, Digraph.product(12, X, Y), Digraph.product(12, Y, X), p)
    assert w is not None and w.observed == 0
    assert w.deficit == pytest.approx(0.25 * 6**3 - 0.001 * 12**3)
    assert w.deficit == pytest.approx(52.272)
    k20 = ThreeGraph.complete(20)
    q = DensityParams(0.9, 0.2)
    rng = np.random.default_rng(5)
    for _ in range(20):
        g1 = Digraph.from_matrix(rng.random((20, 20)) < rng.random())
        g2 = Digraph.from_matrix(rng.random((20, 20)) < rng.random())
        assert check_cherry(k20, g1, g2, q) is None


def test_falsify_cherry_examples():
    split = gen_split(30)
    w = falsify_cherry(split, DensityParams(0.25, 1e-4), restarts=20, iterations=50)
    assert w is not None
    assert w.deficit >= 0.9 * 0.25 * 15**3
    assert w.recheck(split, DensityParams(0.25, 1e-4)).deficit == w.deficit
    assert falsify_cherry(ThreeGraph.complete(15), DensityParams(0.5, 0.05)) is None
    empty = new_graph(12)
    w = falsify_cherry(empty, DensityParams(0.5, 0.001))
    assert w is not None
    assert w.deficit == pytest.approx(0.5 * 12**3 - 0.001 * 12**3)
    assert len(w.objects["g1"]) == len(w.objects["g2"]) == 144


def test_check_points_examples():
    split = gen_split(12)
    p = DensityParams(0.5, 0.001)
    assert check_points(split, set(), range(12), range(12), p) is None
    w = check_points(split, {0, 1, 2}, {0, 1, 2}, {6, 7, 8, 9}, p)
    assert w is not None and w.observed == 0
    k10 = ThreeGraph.complete(10)
    assert points_edge_count(k10, range(10), range(10), range(10)) == 720
    assert check_points(k10, range(10), range(10), range(10), DensityParams(1.0, 0.3)) is None


def test_check_edge_examples():
    p = DensityParams(0.5, 0.01)
    assert check_edge(gen_split(10), range(10), Digraph(10), p) is None
    assert check_edge(new_graph(10), range(10), Digraph.complete(10), p) is not None
    k10 = ThreeGraph.complete(10)
    distinct = Digraph(10, [(y, z) for y in range(10) for z in range(10) if y != z])
    assert edge_edge_count(k10, range(10), distinct) == 720
    assert check_edge(k10, range(10), distinct, DensityParams(1.0, 0.3)) is None


def test_rho_hat_examples():
    assert estimate_rho_hat(ThreeGraph.complete(20), 1.0) <= 3 / 20 + 0.01
    assert estimate_rho_hat(new_graph(10), 0.5) == pytest.approx(0.5)
    assert estimate_rho_hat(gen_split(20), 0.5) >= 0.5 / 8 - 1e-9


def test_falsifiers_are_sound_and_deterministic():
    h = gen_random(14, 0.4, seed=9)
    p = DensityParams(0.6, 0.001)
    for fn in (falsify_cherry, falsify_points, falsify_edge):
        w = fn(h, p, restarts=6, seed=3)
        assert w is not None
        again = w.recheck(h, p)
        assert again is not None and again.deficit == w.deficit and again.observed == w.observed
        w2 = fn(h, p, restarts=6, seed=3)
        assert w2.deficit == w.deficit and w2.objects.keys() == w.objects.keys()


def test_descent_traces_are_monotone():
    traces = []
    falsify_cherry(gen_random(16, 0.5, seed=2), DensityParams(0.5, 0.001), restarts=8, traces=traces)
    assert len(traces) == 8
    for t in traces:
        vals = t.values
        assert all(b <= a + 1e-9 for a, b in zip(vals, vals[1:]))


def test_hierarchy_conversions_preserve_the_deficit():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(4, 9)
        h = gen_random(n, rng.random(), rng.randrange(1000))
        p = DensityParams(rng.uniform(0.2, 1.0), rng.uniform(0, 0.01))
        xs, ys, zs = ({v for v in range(n) if rng.random() < 0.5} for _ in range(3))
        wp = check_points(h, xs, ys, zs, p)
        if wp is None:
            continue
        x, g = points_to_edge(wp, n)
        we = check_edge(h, x, g, p)
        g1, g2 = points_to_cherry(wp, n)
        wc = check_cherry(h, g1, g2, p)
        assert we is not None and wc is not None
        assert we.deficit == pytest.approx(wp.deficit)
        assert wc.deficit == pytest.approx(wp.deficit)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 8), st.integers(0, 10**6), st.floats(0.1, 1.0), st.floats(0, 0.05))
def test_check_is_monotone_in_parameters(n, seed, d, rho):
    rng = np.random.default_rng(seed)
    h = gen_random(n, 0.5, seed)
    g1 = Digraph.from_matrix(rng.random((n, n)) < 0.5)
    g2 = Digraph.from_matrix(rng.random((n, n)) < 0.5)
    if check_cherry(h, g1, g2, DensityParams(d, rho)) is None:
        assert check_cherry(h, g1, g2, DensityParams(d, rho + 0.01)) is None
        assert check_cherry(h, g1, g2, DensityParams(d * 0.9, rho)) is None


def test_bad_params():
    with pytest.raises(ValueError):
        DensityParams(0.0, 0.1)
    with pytest.raises(ValueError):
        DensityParams(0.5, -1)
    with pytest.raises(ValueError):
        check_cherry(new_graph(4), Digraph(5), Digraph(5), DensityParams(0.5, 0.1))
