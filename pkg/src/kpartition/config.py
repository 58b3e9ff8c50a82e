"""Configurations: parts, cascades, reservoirs, ranks and the potential vector.

One part, the *root*, plays the role of the part being grown; it never
carries a cascade. Every other part ``i`` carries a cascade: a sequence of
non-terminal vertices of part ``i`` in which each entry lies outside the
reservoir of its predecessor. The reservoir of ``v`` in part ``i`` is the set
of vertices of part ``i`` still reachable from the terminal once ``v`` is
removed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import NamedTuple, Optional

from kpartition.errors import ContractError, InputError
from kpartition.graph import Graph, component_of, is_connected


@dataclass(frozen=True)
class Problem:
    graph: Graph
    terminals: tuple
    sizes: tuple

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "sizes", tuple(self.sizes))
        k = len(self.terminals)
        if k < 2:
            raise InputError(f"need at least two terminals, got {k}")
        if len(self.sizes) != k:
            raise InputError(f"{k} terminals but {len(self.sizes)} sizes")
        if len(set(self.terminals)) != k:
            raise InputError("terminals must be distinct")
        for v in self.terminals:
            if not isinstance(v, int) or not 0 <= v < self.graph.n:
                raise InputError(f"terminal {v!r} out of range")
        for s in self.sizes:
            if not isinstance(s, int) or s < 1:
                raise InputError(f"sizes must be positive integers, got {s!r}")
        if sum(self.sizes) > self.graph.n:
            raise InputError(f"sizes sum to {sum(self.sizes)} > n = {self.graph.n}")

    @property
    def k(self) -> int:
        return len(self.terminals)


@dataclass(frozen=True)
class Configuration:
    """Disjoint connected parts plus one cascade per non-root part.

    ``cascades[root]`` is always empty. Indices are 0-based.
    """

    graph: Graph
    terminals: tuple
    parts: tuple
    cascades: tuple
    root: int = 0

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))
        object.__setattr__(self, "cascades", tuple(tuple(c) for c in self.cascades))
        k = len(self.terminals)
        if len(self.parts) != k or len(self.cascades) != k:
            raise InputError("terminals, parts and cascades must have equal length")
        if not 0 <= self.root < k:
            raise InputError(f"root index {self.root} out of range")
        seen = set()
        for i, (t, p) in enumerate(zip(self.terminals, self.parts)):
            if t not in p:
                raise InputError(f"terminal {t} not in part {i}")
            if seen & p:
                raise InputError(f"part {i} overlaps an earlier part")
            seen |= p
            if not all(0 <= v < self.graph.n for v in p):
                raise InputError(f"part {i} has out-of-range vertices")
            if not is_connected(self.graph, p):
                raise InputError(f"part {i} is not connected")
        for i, c in enumerate(self.cascades):
            if i == self.root and c:
                raise InputError("the root part carries no cascade")
            if len(set(c)) != len(c):
                raise InputError(f"cascade {i} repeats a vertex")
            for w in c:
                if w not in self.parts[i] or w == self.terminals[i]:
                    raise InputError(f"cascade {i} entry {w} must be a non-terminal vertex of part {i}")

    @classmethod
    def null(cls, graph: Graph, terminals, parts, root: int = 0) -> Configuration:
        return cls(graph, terminals, parts, tuple(() for _ in parts), root)

    @property
    def k(self) -> int:
        return len(self.terminals)

    @cached_property
    def free(self) -> frozenset:
        used = set().union(*self.parts)
        return frozenset(v for v in self.graph.vertices if v not in used)

    @cached_property
    def part_of(self) -> dict:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    @cached_property
    def cascade_vertices(self) -> list:
        """``(part index, vertex)`` for every cascade entry, in index order."""
        return [(i, w) for i, c in enumerate(self.cascades) for w in c]

    @cached_property
    def reservoirs(self) -> dict:
        return {w: reservoir(self, i, w) for i, w in self.cascade_vertices}

    @cached_property
    def ranks(self) -> dict:
        return compute_ranks(self)

    def with_cascades(self, cascades) -> Configuration:
        return replace(self, cascades=tuple(tuple(c) for c in cascades))

    def sizes(self) -> tuple:
        return tuple(len(p) for p in self.parts)

    def dump(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": sorted(self.graph.edges),
            "terminals": list(self.terminals),
            "parts": [sorted(p) for p in self.parts],
            "cascades": [list(c) for c in self.cascades],
            "root": self.root,
        }


class Bridge(NamedTuple):
    a: int
    b: int
    owners: frozenset
    rank: int


def reservoir(cfg: Configuration, i: int, v: int) -> frozenset:
    """Vertices of part ``i`` joined to its terminal by a path avoiding ``v``."""
    part = cfg.parts[i]
    if v not in part:
        raise InputError(f"vertex {v} is not in part {i}")
    t = cfg.terminals[i]
    if v == t:
        return frozenset()
    return component_of(cfg.graph, part - {v}, t)


def compute_ranks(cfg: Configuration) -> dict:
    """Least-fixpoint ranks of all cascade vertices; ``None`` marks undefined.

    Rank 1 means a neighbour in the root part. Rank ``r`` means a neighbour
    in the reservoir of a rank ``r-1`` cascade vertex of a different part.
    """
    g, res = cfg.graph, cfg.reservoirs
    root_part = cfg.parts[cfg.root]
    ranks: dict = {w: None for _, w in cfg.cascade_vertices}
    layer = []
    for i, w in cfg.cascade_vertices:
        if g.adj[w] & root_part:
            ranks[w] = 1
            layer.append((i, w))
    r = 1
    while layer:
        # vertex -> parts owning a rank-r reservoir that contains it
        covered: dict = {}
        for i, w in layer:
            for x in res[w]:
                covered.setdefault(x, set()).add(i)
        r += 1
        layer = []
        for i, w in cfg.cascade_vertices:
            if ranks[w] is not None:
                continue
            if any(covered.get(x, set()) - {i} for x in g.adj[w]):
                ranks[w] = r
                layer.append((i, w))
    return ranks


def validity_violations(cfg: Configuration, ranks: Optional[dict] = None) -> list:
    """Reasons ``cfg`` is not valid: undefined ranks or non-increasing ranks along a cascade."""
    ranks = cfg.ranks if ranks is None else ranks
    problems = []
    for i, c in enumerate(cfg.cascades):
        prev = 0
        for w in c:
            r = ranks.get(w)
            if r is None:
                problems.append(f"cascade {i}: vertex {w} has undefined rank")
                break
            if r <= prev:
                problems.append(f"cascade {i}: rank of {w} is {r}, not above {prev}")
            prev = r
    return problems


def is_valid(cfg: Configuration) -> bool:
    return not validity_violations(cfg)


def structure_violations(cfg: Configuration) -> list:
    """Cascade separation and nesting: every earlier entry and the terminal lie in each later reservoir."""
    problems = []
    res = cfg.reservoirs
    for i, c in enumerate(cfg.cascades):
        for j in range(1, len(c)):
            if c[j] in res[c[j - 1]]:
                problems.append(f"cascade {i}: {c[j]} lies in the reservoir of {c[j - 1]}")
        for j, w in enumerate(c):
            inner = {cfg.terminals[i], *c[:j]}
            if not inner <= res[w]:
                problems.append(f"cascade {i}: {sorted(inner - res[w])} outside the reservoir of {w}")
    return problems


def potential(cfg: Configuration, ranks: Optional[dict] = None) -> tuple:
    """The vector of reservoir coverage per rank, ``(rho_1, ..., rho_L)``."""
    ranks = cfg.ranks if ranks is None else ranks
    bad = validity_violations(cfg, ranks)
    if bad:
        raise ContractError(f"potential of an invalid configuration: {bad[0]}")
    top = max((r for r in ranks.values() if r is not None), default=0)
    covered = [[set() for _ in cfg.parts] for _ in range(top)]
    for i, w in cfg.cascade_vertices:
        covered[ranks[w] - 1][i] |= cfg.reservoirs[w]
    return tuple(sum(len(s) for s in per_part) for per_part in covered)


def compare_potential(p, q) -> str:
    """Lexicographic order after zero-padding: ``'less'``, ``'equal'`` or ``'greater'``."""
    width = max(len(p), len(q))
    pp = tuple(p) + (0,) * (width - len(p))
    qq = tuple(q) + (0,) * (width - len(q))
    if pp < qq:
        return "less"
    if pp > qq:
        return "greater"
    return "equal"


def owners_of(cfg: Configuration, x: int) -> frozenset:
    """Cascade vertices whose reservoir contains ``x``."""
    i = cfg.part_of.get(x)
    if i is None or i == cfg.root:
        return frozenset()
    return frozenset(w for w in cfg.cascades[i] if x in cfg.reservoirs[w])


def find_bridges(cfg: Configuration, ranks: Optional[dict] = None) -> list:
    """Edges from the free set into a reservoir, sorted by ``(rank, a, b)``."""
    ranks = cfg.ranks if ranks is None else ranks
    g = cfg.graph
    out = []
    for a in cfg.free:
        for b in g.adj[a]:
            owners = owners_of(cfg, b)
            if owners:
                out.append(Bridge(a, b, owners, min(ranks[w] for w in owners)))
    out.sort(key=lambda br: (br.rank, br.a, br.b))
    return out


def in_any_reservoir(cfg: Configuration, x: int) -> bool:
    return bool(owners_of(cfg, x))


def _feeds(cfg: Configuration, a: int, i: int) -> bool:
    """Whether ``a`` is in the root part or in a reservoir of a part other than ``i``."""
    j = cfg.part_of.get(a)
    if j is None:
        return False
    if j == cfg.root:
        return True
    return j != i and in_any_reservoir(cfg, a)


def find_cascade_edge(cfg: Configuration, ranks: Optional[dict] = None) -> Optional[tuple]:
    """Smallest ``(i, b, a)`` such that ``b`` may be pushed onto cascade ``i`` via edge ``ab``.

    Returns ``(a, b, i)`` or None.
    """
    g = cfg.graph
    for i, part in enumerate(cfg.parts):
        if i == cfg.root:
            continue
        last = cfg.cascades[i][-1] if cfg.cascades[i] else None
        for b in sorted(part):
            if b == cfg.terminals[i] or b == last or in_any_reservoir(cfg, b):
                continue
            for a in sorted(g.adj[b]):
                if _feeds(cfg, a, i):
                    return a, b, i
    return None


def prune_undefined(cfg: Configuration) -> Configuration:
    """Cut cascades back until the configuration is valid.

    Each round drops, in every cascade, the first entry whose rank is
    undefined or not above its predecessor's, together with everything after
    it. Dropping reservoirs can only raise or undefine other ranks, so rounds
    repeat until nothing changes.
    """
    while True:
        ranks = compute_ranks(cfg)
        changed = False
        cascades = []
        for c in cfg.cascades:
            keep, prev = 0, 0
            for w in c:
                r = ranks[w]
                if r is None or r <= prev:
                    break
                keep, prev = keep + 1, r
            if keep < len(c):
                changed = True
            cascades.append(c[:keep])
        if not changed:
            return cfg
        cfg = cfg.with_cascades(cascades)
