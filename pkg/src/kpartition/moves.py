"""State transitions on configurations and the policy choosing between them.

Each ``apply_*`` function checks its precondition (raising ContractError),
builds the successor configuration, and asserts the postcondition that makes
the move count as progress (raising InvariantError with a state dump).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from kpartition.config import (
    Bridge,
    Configuration,
    compare_potential,
    find_bridges,
    find_cascade_edge,
    in_any_reservoir,
    owners_of,
    potential,
    prune_undefined,
    structure_violations,
    validity_violations,
)
from kpartition.errors import ContractError, InvariantError
from kpartition.graph import CutWitness, separates


@dataclass(frozen=True)
class DirectGrow:
    """The root part absorbs an adjacent free vertex ``b``."""

    a: int
    b: int


@dataclass(frozen=True)
class CascadeAppend:
    part: int
    a: int
    b: int
    rank: int


@dataclass(frozen=True)
class CascadeTruncateAppend:
    part: int
    a: int
    b: int
    keep: int  # entries of the old cascade kept before b
    rank: int


@dataclass(frozen=True)
class BridgeSeparating:
    bridge: Bridge
    w: int
    u: int


@dataclass(frozen=True)
class BridgeRankOne:
    bridge: Bridge
    w: int


@dataclass(frozen=True)
class BridgeHigher:
    bridge: Bridge
    w: int


Move = Union[DirectGrow, CascadeAppend, CascadeTruncateAppend, BridgeSeparating, BridgeRankOne, BridgeHigher]

# moves after which the augmentation is complete
FINISHING = (DirectGrow, BridgeRankOne)


def move_kind(move) -> str:
    return type(move).__name__


def _fail(message: str, cfg: Configuration, **extra):
    state = cfg.dump()
    state.update(extra)
    raise InvariantError(message, state)


def check_state(cfg: Configuration) -> None:
    """Assert the invariants every engine state must satisfy."""
    bad = validity_violations(cfg) + structure_violations(cfg)
    if bad:
        _fail("engine state invariant violated: " + "; ".join(bad), cfg)


def _minimal_owner(cfg: Configuration, bridge: Bridge) -> int:
    ranks = cfg.ranks
    return min(bridge.owners, key=lambda w: (ranks[w], w))


def prospective_rank(cfg: Configuration, b: int, i: int):
    """Rank ``b`` would get as a cascade vertex of part ``i`` under the current reservoirs."""
    g, ranks = cfg.graph, cfg.ranks
    if g.adj[b] & cfg.parts[cfg.root]:
        return 1
    best = None
    for x in g.adj[b]:
        if cfg.part_of.get(x) in (None, i, cfg.root):
            continue
        for w in owners_of(cfg, x):
            if best is None or ranks[w] < best:
                best = ranks[w]
    return None if best is None else best + 1


def _rebuild(cfg: Configuration, parts, cascades) -> Configuration:
    return Configuration(cfg.graph, cfg.terminals, parts, cascades, cfg.root)


# ---------------------------------------------------------------- cascade moves


def cascade_move_for(cfg: Configuration, a: int, b: int, i: int):
    """Describe the cascade move pushing ``b`` onto cascade ``i`` (append or truncate-append)."""
    if not (cfg.graph.has_edge(a, b) and b in cfg.parts[i] and i != cfg.root):
        raise ContractError(f"({a}, {b}) is not an edge into part {i}")
    if b == cfg.terminals[i] or in_any_reservoir(cfg, b):
        raise ContractError(f"vertex {b} is a terminal or lies in a reservoir")
    c = cfg.cascades[i]
    if c and c[-1] == b:
        raise ContractError(f"vertex {b} already ends cascade {i}")
    r = prospective_rank(cfg, b, i)
    if r is None:
        raise ContractError(f"vertex {b} would have undefined rank")
    keep = sum(1 for w in c if cfg.ranks[w] < r)
    if keep == len(c):
        return CascadeAppend(i, a, b, r)
    return CascadeTruncateAppend(i, a, b, keep, r)


def apply_cascade_move(cfg: Configuration, a: int, b: int, i: int) -> Configuration:
    move = cascade_move_for(cfg, a, b, i)
    before = potential(cfg)
    old = cfg.cascades[i]
    cascades = list(cfg.cascades)
    cascades[i] = old[: getattr(move, "keep", len(old))] + (b,)
    out = prune_undefined(cfg.with_cascades(cascades))
    check_state(out)
    if out.cascades[i][-1] != b or out.ranks[b] != move.rank:
        _fail(f"pushed vertex {b} lost its place or rank", out, move=repr(move))
    if old and not {old[-1]} | cfg.reservoirs[old[-1]] <= out.reservoirs[b]:
        _fail("new reservoir does not absorb the old cascade end", out, move=repr(move))
    after = potential(out)
    if compare_potential(after, before) != "greater":
        _fail(f"cascade move did not raise the potential: {before} -> {after}", out, move=repr(move))
    return out


# ----------------------------------------------------------------- bridge moves


def _bridge_context(cfg: Configuration, bridge: Bridge):
    if bridge.a not in cfg.free or not cfg.graph.has_edge(bridge.a, bridge.b):
        raise ContractError(f"({bridge.a}, {bridge.b}) is not an edge leaving the free set")
    owners = owners_of(cfg, bridge.b)
    if not owners:
        raise ContractError(f"vertex {bridge.b} is in no reservoir")
    w = min(owners, key=lambda x: (cfg.ranks[x], x))
    return w, cfg.part_of[w], cfg.ranks[w]


def nonseparating_outside(cfg: Configuration, i: int, w: int):
    """Smallest vertex of part ``i`` beyond ``w`` (outside its reservoir) whose removal keeps the part connected."""
    part = cfg.parts[i]
    outside = part - cfg.reservoirs[w] - {w}
    for u in sorted(outside):
        if not separates(cfg.graph, part, u):
            return u
    return None


def apply_bridge_separating(cfg: Configuration, bridge: Bridge) -> Configuration:
    w, i, r = _bridge_context(cfg, bridge)
    part = cfg.parts[i]
    if not separates(cfg.graph, part, w):
        raise ContractError(f"owner {w} does not separate part {i}")
    u = nonseparating_outside(cfg, i, w)
    if u is None:
        _fail(f"no nonseparating vertex beyond {w} in part {i}", cfg, bridge=repr(bridge))
    before = potential(cfg)
    beyond = part - cfg.reservoirs[w] - {w}
    parts = list(cfg.parts)
    parts[i] = (part - {u}) | {bridge.a}
    cascades = list(cfg.cascades)
    cascades[i] = tuple(x for x in cfg.cascades[i] if x not in beyond)
    out = prune_undefined(_rebuild(cfg, parts, cascades))
    check_state(out)
    after = potential(out)
    if w not in out.ranks or out.ranks[w] != r or bridge.a not in out.reservoirs[w]:
        _fail(f"owner {w} lost rank {r} or did not absorb {bridge.a}", out, bridge=repr(bridge))
    if after[: r - 1] != before[: r - 1] or after[r - 1] <= before[r - 1]:
        _fail(f"separating move gave {before} -> {after} at rank {r}", out, bridge=repr(bridge))
    return out


def apply_bridge_rank_one(cfg: Configuration, bridge: Bridge) -> Configuration:
    """Finish the augmentation: the root part takes ``w``, ``w``'s part takes the free end."""
    w, i, r = _bridge_context(cfg, bridge)
    part, root = cfg.parts[i], cfg.parts[cfg.root]
    if r != 1 or not cfg.graph.adj[w] & root:
        raise ContractError(f"owner {w} is not adjacent to the root part")
    if separates(cfg.graph, part, w):
        raise ContractError(f"owner {w} separates part {i}")
    parts = list(cfg.parts)
    parts[cfg.root] = root | {w}
    parts[i] = (part | {bridge.a}) - {w}
    try:
        return Configuration.null(cfg.graph, cfg.terminals, parts, cfg.root)
    except ValueError as exc:
        _fail(f"rank-one move broke a part: {exc}", cfg, bridge=repr(bridge))


def apply_bridge_higher(cfg: Configuration, bridge: Bridge) -> Configuration:
    w, i, r = _bridge_context(cfg, bridge)
    part = cfg.parts[i]
    if r < 2:
        raise ContractError("bridge has rank 1")
    if separates(cfg.graph, part, w):
        raise ContractError(f"owner {w} separates part {i}")
    before = potential(cfg)
    parts = list(cfg.parts)
    parts[i] = (part | {bridge.a}) - {w}
    cascades = list(cfg.cascades)
    c = cfg.cascades[i]
    cascades[i] = c[: c.index(w)]
    out = prune_undefined(_rebuild(cfg, parts, cascades))
    check_state(out)
    after = potential(out)
    if after[: r - 1] != before[: r - 1]:
        _fail(f"higher-rank move changed the prefix: {before} -> {after} at rank {r}", out, bridge=repr(bridge))
    follow = find_bridges(out)
    if not follow or follow[0].rank > r - 1:
        _fail(f"no bridge of rank <= {r - 1} after moving {w} out", out, bridge=repr(bridge))
    return out


def apply_direct_grow(cfg: Configuration, a: int, b: int) -> Configuration:
    root = cfg.parts[cfg.root]
    if a not in root or b not in cfg.free or not cfg.graph.has_edge(a, b):
        raise ContractError(f"({a}, {b}) does not join the root part to the free set")
    parts = list(cfg.parts)
    parts[cfg.root] = root | {b}
    return Configuration.null(cfg.graph, cfg.terminals, parts, cfg.root)


def apply_move(cfg: Configuration, move) -> Configuration:
    if isinstance(move, DirectGrow):
        return apply_direct_grow(cfg, move.a, move.b)
    if isinstance(move, (CascadeAppend, CascadeTruncateAppend)):
        return apply_cascade_move(cfg, move.a, move.b, move.part)
    if isinstance(move, BridgeSeparating):
        return apply_bridge_separating(cfg, move.bridge)
    if isinstance(move, BridgeRankOne):
        return apply_bridge_rank_one(cfg, move.bridge)
    if isinstance(move, BridgeHigher):
        return apply_bridge_higher(cfg, move.bridge)
    raise ContractError(f"unknown move {move!r}")


# ---------------------------------------------------------------- policy


def certify_cut(cfg: Configuration) -> CutWitness:
    """The cut left when no move applies: last cascade entries, or terminals of null cascades.

    It has ``k - 1`` vertices and separates the root part and all reservoirs
    from the free set.
    """
    cut = set()
    for i, c in enumerate(cfg.cascades):
        if i != cfg.root:
            cut.add(c[-1] if c else cfg.terminals[i])
    side_a = set(cfg.parts[cfg.root]).union(*cfg.reservoirs.values()) - cut
    side_b = set(cfg.graph.vertices) - cut - side_a
    witness = CutWitness(frozenset(cut), frozenset(side_a), frozenset(side_b))
    bad = witness.violations(cfg.graph)
    if len(cut) != cfg.k - 1:
        bad.append(f"cut has {len(cut)} vertices, expected {cfg.k - 1}")
    if bad:
        _fail("terminal cut does not separate: " + "; ".join(bad), cfg)
    return witness


def select_move(cfg: Configuration):
    """Pick the next move, or return the separating cut when none applies.

    Priority: direct growth of the root part, then the minimal-rank bridge,
    then a cascade push.
    """
    g, root = cfg.graph, cfg.parts[cfg.root]
    for b in sorted(cfg.free):
        touching = g.adj[b] & root
        if touching:
            return DirectGrow(min(touching), b)

    bridges = find_bridges(cfg)
    if bridges:
        bridge = bridges[0]
        w = _minimal_owner(cfg, bridge)
        i = cfg.part_of[w]
        if separates(g, cfg.parts[i], w):
            u = nonseparating_outside(cfg, i, w)
            if u is None:
                _fail(f"no nonseparating vertex beyond {w} in part {i}", cfg)
            return BridgeSeparating(bridge, w, u)
        if bridge.rank == 1:
            return BridgeRankOne(bridge, w)
        return BridgeHigher(bridge, w)

    edge = find_cascade_edge(cfg)
    if edge is not None:
        a, b, i = edge
        return cascade_move_for(cfg, a, b, i)

    return certify_cut(cfg)
