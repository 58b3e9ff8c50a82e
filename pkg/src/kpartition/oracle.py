"""Exhaustive reference procedures and the partition verifier.

Nothing here calls into the engine; only the Graph type is shared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from kpartition.errors import InputError
from kpartition.graph import Graph

PARTITION_LIMIT = 14
CONNECTIVITY_LIMIT = 10


@dataclass
class VerifyReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set:
        return {code for code, _ in self.violations}


def _reach(g: Graph, allowed: set, start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _connected(g: Graph, s: set) -> bool:
    return bool(s) and len(_reach(g, s, next(iter(s)))) == len(s)


def verify_partition(problem, partition) -> VerifyReport:
    """Check a proposed partition against the problem without trusting either."""
    g = problem.graph
    parts = [set(p) for p in getattr(partition, "parts", partition)]
    report = VerifyReport()
    bad = report.violations
    if len(parts) != len(problem.terminals):
        bad.append(("SIZE", f"{len(parts)} parts for {len(problem.terminals)} terminals"))
        return report
    owner: dict = {}
    for i, p in enumerate(parts):
        for v in p:
            if not (isinstance(v, int) and 0 <= v < g.n):
                bad.append(("COVER", f"part {i} has out-of-range vertex {v!r}"))
            elif v in owner:
                bad.append(("DISJOINT", f"vertex {v} in parts {owner[v]} and {i}"))
            else:
                owner[v] = i
    for i, (p, t, size) in enumerate(zip(parts, problem.terminals, problem.sizes)):
        if len(p) != size:
            bad.append(("SIZE", f"part {i} has {len(p)} vertices, wants {size}"))
        if t not in p:
            bad.append(("TERMINAL", f"part {i} misses terminal {t}"))
        inside = {v for v in p if isinstance(v, int) and 0 <= v < g.n}
        if not _connected(g, inside):
            bad.append(("CONNECTED", f"part {i} is not connected"))
    if sum(problem.sizes) == g.n and len(owner) != g.n:
        bad.append(("COVER", f"{g.n - len(owner)} vertices left uncovered"))
    return report


def _connected_sets(g: Graph, root: int, size: int, allowed: set):
    """Every connected set of exactly ``size`` vertices containing ``root`` inside ``allowed``.

    Each set is produced once: a branch that skips a frontier vertex bans it
    for the rest of that branch.
    """

    def grow(sub, frontier, banned):
        if len(sub) == size:
            yield sub
            return
        order = sorted(frontier)
        for idx, w in enumerate(order):
            new_banned = banned | set(order[:idx])
            new_sub = sub | {w}
            new_frontier = set(order[idx + 1:]) | {
                y for y in g.adj[w] if y in allowed and y not in new_sub and y not in new_banned
            }
            yield from grow(new_sub, new_frontier, new_banned)

    start = {y for y in g.adj[root] if y in allowed}
    yield from grow(frozenset({root}), start, frozenset())


def brute_force_partition(problem):
    """Search all connected parts of the requested sizes, one part at a time.

    Returns a list of vertex sets or None when no valid partition exists.
    """
    g = problem.graph
    if g.n > PARTITION_LIMIT:
        raise InputError(f"brute-force partition refuses n = {g.n} > {PARTITION_LIMIT}")
    terminals, sizes = list(problem.terminals), list(problem.sizes)
    k = len(terminals)
    full = sum(sizes) == g.n

    def feasible(available: set, start: int) -> bool:
        # each pending terminal needs a big enough piece of what is left
        for j in range(start, k):
            if len(_reach(g, available - set(terminals[:j] + terminals[j + 1:]), terminals[j])) < sizes[j]:
                return False
        return True

    def place(i: int, available: set, chosen: list):
        if i == k:
            return list(chosen)
        others = set(terminals[i + 1:])
        allowed = available - others
        for part in _connected_sets(g, terminals[i], sizes[i], allowed):
            rest = available - part
            if full and i == k - 2:
                last = set(rest)
                if terminals[-1] in last and len(last) == sizes[-1] and _connected(g, last):
                    return chosen + [frozenset(part), frozenset(last)]
                continue
            if not feasible(rest, i + 1):
                continue
            found = place(i + 1, rest, chosen + [frozenset(part)])
            if found is not None:
                return found
        return None

    return place(0, set(g.vertices), [])


def brute_force_connectivity(g: Graph) -> int:
    """Smallest vertex set whose removal disconnects ``g``; ``n - 1`` if none does."""
    if g.n > CONNECTIVITY_LIMIT:
        raise InputError(f"brute-force connectivity refuses n = {g.n} > {CONNECTIVITY_LIMIT}")
    everything = set(g.vertices)
    for size in range(max(g.n - 1, 0)):
        for cut in combinations(range(g.n), size):
            rest = everything - set(cut)
            if not _connected(g, rest):
                return size
    return max(g.n - 1, 0)
