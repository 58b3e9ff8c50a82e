"""Deterministic graph families for tests and the ``gen`` command.

Random graphs use numpy's PCG64 bit generator seeded with the given seed.
Candidate edges ``(u, v)``, ``u < v``, are visited in lexicographic order and
kept when the next double from the stream is below ``p``; rejected attempts
keep drawing from the same stream.
"""

from __future__ import annotations

import numpy as np

from kpartition.errors import GenerationError, InputError
from kpartition.graph import Graph, vertex_connectivity_at_least

MAX_ATTEMPTS = 1000


def complete(n: int) -> Graph:
    if n < 1:
        raise InputError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def circulant(n: int, offsets) -> Graph:
    offsets = list(offsets)
    if n < 3:
        raise InputError(f"circulant needs n >= 3, got {n}")
    if not offsets or len(set(offsets)) != len(offsets) or not all(1 <= d <= n // 2 for d in offsets):
        raise InputError(f"offsets must be distinct values in 1..{n // 2}, got {offsets}")
    edges = {(min(v, (v + d) % n), max(v, (v + d) % n)) for v in range(n) for d in offsets}
    return Graph(n, frozenset(edges))


def hypercube(d: int) -> Graph:
    if d < 1:
        raise InputError(f"hypercube needs d >= 1, got {d}")
    n = 1 << d
    return Graph(n, frozenset((v, v | (1 << b)) for v in range(n) for b in range(d) if not v & (1 << b)))


def gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    draws = rng.random(len(pairs))
    return Graph(n, frozenset(e for e, x in zip(pairs, draws) if x < p))


def random_k_connected(n: int, p: float, k: int, seed: int) -> tuple:
    """Sample G(n, p) until it is k-connected. Returns ``(graph, attempts)``."""
    if not 0 < p <= 1:
        raise InputError(f"edge probability must lie in (0, 1], got {p}")
    if k < 1 or n < k + 1:
        raise InputError(f"need k >= 1 and n >= k + 1, got n = {n}, k = {k}")
    rng = np.random.Generator(np.random.PCG64(seed))
    for attempt in range(1, MAX_ATTEMPTS + 1):
        g = gnp(n, p, rng)
        if vertex_connectivity_at_least(g, k).ok:
            return g, attempt
    raise GenerationError(
        f"no {k}-connected graph in {MAX_ATTEMPTS} samples of G({n}, {p}); try a larger edge probability"
    )
