"""Fixtures, independent oracles (networkx-based) and instance builders for tests."""

from __future__ import annotations

import math
import random
from collections import deque

import networkx as nx

from kpartition.config import Configuration, Problem
from kpartition.errors import GenerationError
from kpartition.generators import circulant, hypercube, random_k_connected
from kpartition.graph import Graph


def cfg_a_graph(extra=(), drop=()) -> Graph:
    g = Graph.from_edges(6, [(0, 2), (1, 2), (1, 4), (3, 4), (1, 5)])
    return g.with_edges(extra).without_edges(drop)


def cfg_a(extra=(), drop=()) -> Configuration:
    """CFG-A: part1={0}; part2={1,2} cascade (2); part3={3,4} cascade (4); S={5}."""
    g = cfg_a_graph(extra, drop)
    return Configuration(g, (0, 1, 3), [{0}, {1, 2}, {3, 4}], [(), (2,), (4,)])


def cfg_b(extra=(), cascade2=(2,)) -> Configuration:
    """CFG-B: CFG-A with part2={1,2,6} on 7 vertices and the extra edge 2-6."""
    g = Graph.from_edges(7, [(0, 2), (1, 2), (1, 4), (3, 4), (1, 5), (2, 6)]).with_edges(extra)
    return Configuration(g, (0, 1, 3), [{0}, {1, 2, 6}, {3, 4}], [(), cascade2, (4,)])


def nx_graph(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_reservoir(cfg: Configuration, i: int, v: int) -> set:
    """Reservoir by networkx component search on the part minus ``v``."""
    t = cfg.terminals[i]
    if v == t:
        return set()
    sub = nx_graph(cfg.graph).subgraph(cfg.parts[i] - {v})
    return set(nx.node_connected_component(sub, t))


def naive_ranks(cfg: Configuration) -> dict:
    """Ranks by Bellman-Ford style relaxation straight from the definition."""
    res = {w: nx_reservoir(cfg, i, w) for i, c in enumerate(cfg.cascades) for w in c}
    part = {w: i for i, c in enumerate(cfg.cascades) for w in c}
    root = cfg.parts[cfg.root]
    inf = math.inf
    rank = {w: (1 if cfg.graph.adj[w] & root else inf) for w in part}
    for _ in range(len(part) + 1):
        for w in part:
            for w2 in part:
                if part[w2] != part[w] and rank[w2] < inf and cfg.graph.adj[w] & res[w2]:
                    rank[w] = min(rank[w], rank[w2] + 1)
    return {w: (None if r == inf else r) for w, r in rank.items()}


def separates_cleanly(g: Graph, cut, side_a, side_b) -> bool:
    """Independent witness check: after removing ``cut`` no component meets both sides.

    Either side may span several components.
    """
    h = nx_graph(g)
    h.remove_nodes_from(cut)
    a, b = set(side_a), set(side_b)
    if not a or not b or a & b or set(cut) & (a | b):
        return False
    return all(not (comp & a and comp & b) for comp in nx.connected_components(h))


def random_graph(rnd: random.Random, n: int, p: float) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p))


def random_problem(g: Graph, k: int, rnd: random.Random, total=None) -> Problem:
    """Random distinct terminals and a random composition of ``total`` (default n) into k positive sizes."""
    total = g.n if total is None else total
    terminals = rnd.sample(range(g.n), k)
    cuts = sorted(rnd.sample(range(1, total), k - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    return Problem(g, terminals, sizes)


def _dist(g: Graph, s: int) -> dict:
    d = {s: 0}
    q = deque([s])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if y not in d:
                d[y] = d[x] + 1
                q.append(y)
    return d


def adversarial_parts(g: Graph, terminals, grow: int, rnd: random.Random):
    """Parts covering almost everything, with the free vertices far from the growing terminal."""
    d = _dist(g, terminals[grow])
    order = sorted(range(g.n), key=lambda v: (-d.get(v, 0), rnd.random()))
    free = set(order[: rnd.randint(1, max(1, g.n // 6))]) - set(terminals)
    if not free:
        return None
    parts = [{t} for t in terminals]
    used = set(terminals) | free
    cap = rnd.randint(1, 3)
    stuck = 0
    while len(used) < g.n and stuck < 200:
        i = rnd.randrange(len(parts))
        if i == grow and len(parts[i]) >= cap:
            stuck += 1
            continue
        cand = sorted({y for x in parts[i] for y in g.adj[x] if y not in used})
        if not cand:
            stuck += 1
            continue
        y = rnd.choice(cand)
        parts[i].add(y)
        used.add(y)
        stuck = 0
    return parts


def adversarial_instances(count: int, seed0: int = 0):
    """Yield ``(problem, parts, grow)`` on sparse k-connected graphs, for stress tests."""
    made = 0
    seed = seed0
    while made < count:
        rnd = random.Random(seed)
        seed += 1
        family = rnd.choice(["gnp", "circ", "cube"])
        if family == "cube":
            d = rnd.choice([3, 4])
            g, k = hypercube(d), rnd.randint(2, d)
        elif family == "circ":
            g, k = circulant(rnd.randint(6, 30), [1, 2]), rnd.randint(2, 4)
        else:
            k = rnd.choice([2, 3, 4])
            n = rnd.randint(k + 3, 30)
            try:
                g, _ = random_k_connected(n, min(1.0, 1.25 * (k + 1.2) / n), k, seed)
            except GenerationError:
                continue
        terminals = rnd.sample(range(g.n), k)
        grow = rnd.randrange(k)
        parts = adversarial_parts(g, terminals, grow, rnd)
        if parts is None:
            continue
        made += 1
        yield Problem(g, terminals, [len(p) for p in parts]), parts, grow


ACCEPTANCE_LOG: dict = {}


class criterion:
    """Context manager that records one acceptance line, PASS unless the block raises."""

    def __init__(self, number: int, title: str):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        why = self.detail if exc is None else f"{self.detail} {type(exc).__name__}: {exc}".strip()
        line = f"criterion {self.number} [{self.title}]: {status}" + (f" ({why})" if why else "")
        ACCEPTANCE_LOG[self.number] = line.splitlines()[0]
        print(line)
        return False
