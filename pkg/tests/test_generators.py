import pytest

from kpartition.errors import GenerationError, InputError
from kpartition.generators import circulant, complete, cycle, hypercube, random_k_connected
from kpartition.graph import vertex_connectivity_at_least
from kpartition.oracle import brute_force_connectivity


def test_cycle_edges():
    assert cycle(4).edges == {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_circulant_is_four_regular():
    g = circulant(6, {1, 2})
    assert len(g.edges) == 12
    assert all(g.degree(v) == 4 for v in g.vertices)


def test_circulant_half_offset_is_a_matching():
    g = circulant(6, [3])
    assert len(g.edges) == 3


def test_hypercube():
    g = hypercube(3)
    assert len(g.edges) == 12
    assert brute_force_connectivity(g) == 3
    assert all(bin(u ^ v).count("1") == 1 for u, v in g.edges)


def test_complete():
    assert len(complete(10).edges) == 45
    assert complete(1).edges == frozenset()


def test_random_with_certain_edges_is_complete():
    g, attempts = random_k_connected(10, 1.0, 3, seed=123)
    assert g == complete(10) and attempts == 1


def test_random_is_deterministic():
    a = random_k_connected(8, 0.5, 2, 7)
    b = random_k_connected(8, 0.5, 2, 7)
    assert a == b
    assert brute_force_connectivity(a[0]) >= 2


def test_random_seeds_differ():
    graphs = {random_k_connected(12, 0.5, 2, s)[0].edges for s in range(5)}
    assert len(graphs) > 1


def test_random_gives_up():
    with pytest.raises(GenerationError, match="larger edge probability"):
        random_k_connected(4, 0.05, 3, 1)


@pytest.mark.parametrize(
    "call",
    [
        lambda: cycle(2),
        lambda: circulant(6, [4]),
        lambda: circulant(6, [1, 1]),
        lambda: circulant(6, []),
        lambda: hypercube(0),
        lambda: complete(0),
        lambda: random_k_connected(5, 0.0, 2, 0),
        lambda: random_k_connected(5, 1.5, 2, 0),
        lambda: random_k_connected(3, 0.5, 3, 0),
    ],
)
def test_invalid_parameters(call):
    with pytest.raises(InputError):
        call()


def test_generated_graphs_meet_requested_connectivity():
    for seed in range(20):
        g, _ = random_k_connected(15, 0.4, 3, seed)
        assert vertex_connectivity_at_least(g, 3).ok
