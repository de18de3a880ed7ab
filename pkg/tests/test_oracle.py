from __future__ import annotations

import random
from itertools import combinations

import pytest

from tightham import ThreeGraph, dp_connector, dp_hamilton, verify_hamilton_cycle, verify_tight_cycle
from tightham.errors import TooLarge
from tightham.generators import gen_random, gen_tight_cycle
from tightham.oracle import verify_tight_path
from tightham.paths import PathEnd

from conftest import brute_hamilton, brute_is_tight_cycle, edge_set


def c5_on_1_to_5():
    return ThreeGraph(6, [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 1), (5, 1, 2)])


def test_verify_examples():
    g = c5_on_1_to_5()
    assert verify_tight_cycle(g, [1, 2, 3, 4, 5], vertex_set={1, 2, 3, 4, 5})
    assert not verify_hamilton_cycle(g, [1, 2, 3, 4, 5])
    g.remove_edge((3, 4, 5))
    assert not verify_tight_cycle(g, [1, 2, 3, 4, 5])
    k6 = ThreeGraph.complete(6)
    assert not verify_tight_cycle(k6, [0, 1, 2, 3, 0])
    assert not verify_tight_cycle(k6, [0, 1, 2, 3])
    assert not verify_tight_path(k6, [0, 1, 1])
    assert not verify_tight_cycle(k6, [0, 1, 2, 3, 9])


def test_dp_examples():
    assert verify_hamilton_cycle(ThreeGraph.complete(6), dp_hamilton(ThreeGraph.complete(6)).order)
    c9 = gen_tight_cycle(9)
    cyc = dp_hamilton(c9)
    assert cyc is not None
    assert cyc.order in {tuple(range(9)), (0,) + tuple(range(8, 0, -1))}
    c9.remove_edge((4, 5, 6))
    assert dp_hamilton(c9) is None
    assert dp_hamilton(ThreeGraph(8)) is None
    assert dp_hamilton(ThreeGraph.complete(4)) is None
    for n in range(5, 15):
        assert dp_hamilton(ThreeGraph.complete(n)).order == tuple(range(n))
    with pytest.raises(TooLarge):
        dp_hamilton(ThreeGraph(19))


def test_dp_matches_permutation_search():
    rng = random.Random(2)
    seen = set()
    for _ in range(60):
        n = rng.randint(5, 8)
        g = gen_random(n, rng.uniform(0.3, 0.9), rng.randrange(10**6))
        got = dp_hamilton(g)
        ref = brute_hamilton(g)
        # the permutation scan visits orders lexicographically, so the first
        # hit is the least one
        assert (None if got is None else got.order) == ref
        if got is not None:
            assert brute_is_tight_cycle(edge_set(g), got.order)
        seen.add(got is None)
    assert seen == {True, False}


def test_dp_is_invariant_under_relabelling():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(6, 10)
        g = gen_random(n, 0.6, rng.randrange(10**6))
        perm = list(range(n))
        rng.shuffle(perm)
        h = ThreeGraph(n, [tuple(perm[v] for v in e) for e in g.edge_list()])
        assert (dp_hamilton(g) is None) == (dp_hamilton(h) is None)


def test_dp_connector_examples():
    k12 = ThreeGraph.complete(12)
    c = dp_connector(k12, PathEnd(0, 1), PathEnd(3, 2), 6)
    assert c is not None and len(c) == 10 and verify_tight_path(k12, c.seq)
    assert c.seq == (0, 1, 4, 5, 6, 7, 8, 9, 2, 3)
    two = ThreeGraph(12, list(combinations(range(6), 3)) + list(combinations(range(6, 12), 3)))
    assert dp_connector(two, PathEnd(0, 1), PathEnd(7, 6), 2) is None
    assert dp_connector(k12, PathEnd(0, 1), PathEnd(3, 2), 6, forbidden=range(4, 12)) is None
    assert dp_connector(k12, PathEnd(0, 1), PathEnd(3, 2), 0).seq == (0, 1, 2, 3)
    with pytest.raises(TooLarge):
        dp_connector(ThreeGraph(20), PathEnd(0, 1), PathEnd(3, 2), 2)


def test_dp_connector_respects_beta():
    g = gen_random(10, 0.5, seed=1)
    c = dp_connector(g, PathEnd(0, 1), PathEnd(3, 2), 3, shadow_graph=g, beta=3)
    if c is not None:
        s = c.seq
        assert all(g.codegree(s[i], s[i + 1]) >= 3 for i in range(1, 5))
