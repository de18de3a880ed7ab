from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightham import ThreeGraph, new_graph
from tightham.errors import DegeneratePair, DegenerateTriple, OutOfRange
from tightham.generators import gen_random
from tightham.hypergraph import index_from_edges


def test_empty_graphs():
    g = new_graph(0)
    assert g.n == 0 and g.num_edges() == 0
    g = new_graph(5)
    assert all(g.codegree(x, y) == 0 for x, y in combinations(range(5), 2))


def test_complete_k5():
    g = new_graph(5)
    for t in combinations(range(5), 3):
        g.add_edge(t)
    assert g == ThreeGraph.complete(5)
    assert g.num_edges() == 10


def test_add_idempotent_and_inverse():
    g = new_graph(4)
    g.add_edge((0, 1, 2))
    g.add_edge((2, 1, 0))
    assert g.num_edges() == 1
    g.remove_edge((1, 0, 2))
    assert g.num_edges() == 0
    assert g.nbr == index_from_edges(4, [])


def test_bad_edges():
    g = new_graph(4)
    with pytest.raises(DegenerateTriple):
        g.add_edge((0, 0, 1))
    with pytest.raises(DegenerateTriple):
        g.add_edge((0, 1))
    with pytest.raises(OutOfRange):
        g.add_edge((0, 1, 4))
    with pytest.raises(DegeneratePair):
        g.codegree(2, 2)


def test_codegrees():
    assert all(ThreeGraph.complete(5).codegree(x, y) == 3 for x, y in combinations(range(5), 2))
    assert new_graph(6).codegree(0, 1) == 0
    g = gen_random(60, 0.5, seed=7)
    mean = np.mean([g.codegree(x, y) for x, y in combinations(range(60), 2)])
    assert abs(mean - 29) <= 2.9


def test_degrees():
    k7 = ThreeGraph.complete(7)
    assert all(k7.vertex_degree(v) == 15 for v in range(7))
    assert k7.min_codegree() == 5
    single = ThreeGraph(5, [(0, 1, 2)])
    assert single.min_vertex_degree() == 0
    assert single.vertex_degree(1) == 1


def test_shadow():
    assert new_graph(5).shadow() == set()
    assert len(ThreeGraph.complete(6).shadow()) == 30
    assert ThreeGraph(4, [(0, 1, 2)]).shadow() == {
        (0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)
    }
    assert ThreeGraph(4, [(0, 1, 2)]).shadow_size() == 3


def test_restricted_counts():
    g = gen_random(12, 0.5, seed=3)
    full = range(12)
    for v in range(12):
        assert g.restricted_degree(v, full) == g.vertex_degree(v)
        assert g.restricted_degree(v, []) == 0
    assert g.restricted_codegree(0, 1, full) == g.codegree(0, 1)
    assert g.restricted_codegree(0, 1, set()) == 0
    k6 = ThreeGraph.complete(6)
    assert k6.restricted_degree(0, {1, 2, 3, 4}) == 6


def test_induced_subgraph():
    g = gen_random(9, 0.5, seed=4)
    sub, labels = g.induced_subgraph(range(9))
    assert sub == g and labels == list(range(9))
    sub, labels = ThreeGraph.complete(6).induced_subgraph({1, 3, 4, 5})
    assert sub == ThreeGraph.complete(4) and labels == [1, 3, 4, 5]
    for s in ({0, 1}, {2}, set()):
        assert g.induced_subgraph(s)[0].num_edges() == 0
    sub, labels = g.induced_subgraph({0, 2, 5, 7, 8})
    for a, b, c in combinations(range(5), 3):
        assert sub.has_edge(a, b, c) == g.has_edge(labels[a], labels[b], labels[c])


def test_dense_and_packed_agree():
    g = gen_random(70, 0.3, seed=2)
    dense = g.dense()
    packed = g.packed()
    assert packed.shape == (70, 70, 2)
    for x, y in [(0, 1), (5, 69), (33, 64), (68, 2)]:
        row = int(packed[x, y, 0]) | int(packed[x, y, 1]) << 64
        assert row == g.nbr[x][y]
        assert int(dense[x, y].sum()) == g.codegree(x, y)
    g.add_edge((0, 1, 2)) if not g.has_edge(0, 1, 2) else g.remove_edge((0, 1, 2))
    assert g.dense() is not dense


ops = st.lists(
    st.tuples(st.booleans(), st.lists(st.integers(0, 7), min_size=3, max_size=3, unique=True)),
    max_size=60,
)


@settings(max_examples=150, deadline=None)
@given(ops)
def test_index_matches_edges_after_any_update_sequence(seq):
    g = new_graph(8)
    for add, t in seq:
        (g.add_edge if add else g.remove_edge)(t)
    assert g.nbr == index_from_edges(8, g.edges)
    assert sum(g.codegree(x, y) for x, y in combinations(range(8), 2)) == 3 * g.num_edges()
    expected_shadow = {(x, y) for e in g.edges for x in e for y in e if x != y}
    assert g.shadow() == expected_shadow
    assert sum(g.degrees()) == 3 * g.num_edges()


def test_copy_is_independent():
    g = ThreeGraph.complete(5)
    h = g.copy()
    h.remove_edge((0, 1, 2))
    assert g.has_edge(0, 1, 2) and not h.has_edge(0, 1, 2)
    assert h.num_edges() == comb(5, 3) - 1
