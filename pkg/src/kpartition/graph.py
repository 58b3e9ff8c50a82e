"""Simple undirected graphs on vertices 0..n-1 and connectivity primitives."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from kpartition.errors import InputError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``edges`` holds canonical pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        edges = frozenset(self.edges)
        adj = [set() for _ in range(self.n)]
        for e in edges:
            u, v = e
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise InputError(f"edge {e!r} is not a canonical pair u < v within 0..{self.n - 1}")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> Graph:
        """Build a graph from pairs in any orientation; duplicates and self-loops are rejected."""
        seen = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InputError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def relabel(self, perm) -> Graph:
        """Return the image of this graph under the vertex bijection ``perm``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def with_edges(self, extra: Iterable) -> Graph:
        return Graph.from_edges(self.n, list(self.edges) + [tuple(e) for e in extra])

    def without_edges(self, gone: Iterable) -> Graph:
        drop = {(min(u, v), max(u, v)) for u, v in gone}
        return Graph(self.n, self.edges - drop)


@dataclass(frozen=True)
class CutWitness:
    """A vertex cut separating ``side_a`` from ``side_b``."""

    cut: frozenset
    side_a: frozenset
    side_b: frozenset

    def violations(self, g: Graph) -> list:
        """Check the witness against ``g`` by direct edge scan."""
        problems = []
        if self.cut & self.side_a or self.cut & self.side_b or self.side_a & self.side_b:
            problems.append("cut, side_a and side_b are not pairwise disjoint")
        if not self.side_a or not self.side_b:
            problems.append("a side is empty")
        for u, v in g.edges:
            if (u in self.side_a and v in self.side_b) or (v in self.side_a and u in self.side_b):
                problems.append(f"edge {u}-{v} joins the two sides")
                break
        return problems


class ConnectivityCheck(NamedTuple):
    ok: bool
    witness: Optional[CutWitness]
    reason: str = ""


def _check_vertex(g: Graph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < g.n:
        raise InputError(f"vertex {v!r} out of range 0..{g.n - 1}")


def neighbors(g: Graph, v: int) -> frozenset:
    _check_vertex(g, v)
    return g.adj[v]


def induced_components(g: Graph, s: Iterable) -> list:
    """Connected components of the subgraph induced on ``s``, ordered by minimum vertex."""
    s = set(s)
    for v in s:
        _check_vertex(g, v)
    comps = []
    for root in sorted(s):
        if any(root in c for c in comps):
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in s and y not in comp:
                    comp.add(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def component_of(g: Graph, s, root: int) -> frozenset:
    """The component of ``root`` inside the subgraph induced on ``s`` (``root`` must be in ``s``)."""
    comp = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y in s and y not in comp:
                comp.add(y)
                queue.append(y)
    return frozenset(comp)


def is_connected(g: Graph, s: Iterable) -> bool:
    """Empty sets are not connected; singletons are."""
    s = set(s)
    if not s:
        return False
    for v in s:
        _check_vertex(g, v)
    return len(component_of(g, s, next(iter(s)))) == len(s)


def separates(g: Graph, s: Iterable, v: int) -> bool:
    """Whether deleting ``v`` disconnects the (connected) induced subgraph on ``s``."""
    s = set(s)
    if v not in s:
        raise InputError(f"vertex {v} is not in the given set")
    rest = s - {v}
    if not rest:
        return False
    return len(component_of(g, rest, next(iter(rest)))) != len(rest)


def _local_cut(g: Graph, s: int, t: int, k: int) -> Optional[frozenset]:
    """Vertex-disjoint s-t paths by unit-capacity augmenting paths.

    Returns None when ``k`` disjoint paths exist, otherwise a minimum s-t
    vertex separator. ``s`` and ``t`` must be nonadjacent.
    """
    # vertex x splits into in-node 2x and out-node 2x+1
    cap: dict = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    big = g.n + 1
    for x in g.vertices:
        arc(2 * x, 2 * x + 1, big if x in (s, t) else 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < k:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            cut = frozenset(x for x in g.vertices if 2 * x in parent and 2 * x + 1 not in parent)
            return cut
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    return None


def _witness_from_cut(g: Graph, cut: frozenset, s: int) -> CutWitness:
    rest = set(g.vertices) - cut
    side_a = component_of(g, rest, s)
    return CutWitness(cut, side_a, frozenset(rest - side_a))


def vertex_connectivity_at_least(g: Graph, k: int) -> ConnectivityCheck:
    """Decide k-connectivity exactly, returning a small cut when it fails.

    A minimum-degree check is followed by local max-flow tests between each of
    the first ``k`` vertices and every later nonadjacent vertex. Any separator
    of size below ``k`` misses one of the first ``k`` vertices, so these pairs
    cover every possible failure.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    if g.n <= k:
        return ConnectivityCheck(False, None, f"n = {g.n} <= k = {k}")
    for v in g.vertices:
        if g.degree(v) < k:
            nb = g.adj[v]
            return ConnectivityCheck(
                False,
                CutWitness(nb, frozenset({v}), frozenset(set(g.vertices) - nb - {v})),
                f"vertex {v} has degree {g.degree(v)}",
            )
    for s in range(k):
        for t in range(s + 1, g.n):
            if g.has_edge(s, t):
                continue
            cut = _local_cut(g, s, t, k)
            if cut is not None:
                return ConnectivityCheck(False, _witness_from_cut(g, cut, s), f"{s} and {t} split by {len(cut)} vertices")
    return ConnectivityCheck(True, None)
