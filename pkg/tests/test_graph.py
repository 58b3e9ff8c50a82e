import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_graph, separates_cleanly
from kpartition.errors import InputError
from kpartition.generators import complete, cycle, hypercube
from kpartition.graph import (
    Graph,
    induced_components,
    is_connected,
    neighbors,
    separates,
    vertex_connectivity_at_least,
)
from kpartition.oracle import brute_force_connectivity

P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
TRIANGLE = complete(3)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, frozenset(chosen))


def test_graph_rejects_bad_edges():
    with pytest.raises(InputError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(InputError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(3, frozenset({(2, 1)}))
    with pytest.raises(InputError):
        Graph(3, frozenset({(0, 3)}))


def test_neighbors():
    assert neighbors(TRIANGLE, 0) == {1, 2}
    assert neighbors(P3, 2) == {1}
    assert neighbors(Graph(1, frozenset()), 0) == frozenset()
    with pytest.raises(InputError):
        neighbors(P3, 3)


def test_induced_components():
    assert induced_components(P3, {0, 2}) == [{0}, {2}]
    assert induced_components(cycle(4), {0, 1, 2, 3}) == [{0, 1, 2, 3}]
    assert induced_components(P3, set()) == []
    with pytest.raises(InputError):
        induced_components(P3, {5})


def test_is_connected_conventions():
    assert is_connected(P3, {0, 1})
    assert not is_connected(P3, {0, 2})
    assert is_connected(P3, {1})
    assert not is_connected(P3, set())


def test_separates():
    assert separates(P3, {0, 1, 2}, 1)
    assert not separates(P3, {0, 1, 2}, 0)
    assert not separates(P3, {1, 2}, 2)
    with pytest.raises(InputError):
        separates(P3, {0, 1}, 2)


@given(graphs(), st.data())
def test_separates_matches_component_count(g, data):
    s = set(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1)))
    v = data.draw(st.sampled_from(sorted(s)))
    assert separates(g, s, v) == (len(induced_components(g, s - {v})) >= 2)


@given(graphs())
def test_components_partition_the_set(g):
    comps = induced_components(g, g.vertices)
    assert sorted(v for c in comps for v in c) == list(g.vertices)
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)
    assert all(is_connected(g, c) for c in comps)


def test_connectivity_examples():
    assert vertex_connectivity_at_least(complete(4), 3).ok
    check = vertex_connectivity_at_least(P3, 2)
    assert not check.ok and check.witness.cut == {1}
    assert vertex_connectivity_at_least(hypercube(3), 3).ok
    assert not vertex_connectivity_at_least(hypercube(3), 4).ok
    assert brute_force_connectivity(hypercube(3)) == 3


def test_connectivity_needs_more_than_k_vertices():
    check = vertex_connectivity_at_least(complete(3), 3)
    assert not check.ok and check.witness is None and "n = 3" in check.reason


@given(graphs(max_n=7), st.integers(1, 4))
def test_connectivity_agrees_with_brute_force(g, k):
    check = vertex_connectivity_at_least(g, k)
    assert check.ok == (g.n > k and brute_force_connectivity(g) >= k)
    if check.witness is not None:
        w = check.witness
        assert len(w.cut) < k
        assert w.violations(g) == []
        assert separates_cleanly(g, w.cut, w.side_a, w.side_b)


def test_connectivity_on_larger_random_graphs():
    # beyond brute force range: every witness must still be a real separator
    rnd = random.Random(3)
    for _ in range(40):
        g = random_graph(rnd, rnd.randint(12, 25), rnd.uniform(0.15, 0.5))
        for k in (1, 2, 3, 4):
            check = vertex_connectivity_at_least(g, k)
            if check.witness is not None:
                assert len(check.witness.cut) < k
                assert separates_cleanly(g, check.witness.cut, check.witness.side_a, check.witness.side_b)
