"""Grow parts one vertex at a time until every target size is met."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from kpartition.config import Configuration, Problem, compare_potential, potential
from kpartition.errors import InputError, InvariantError, NotKConnected, ProgressStall
from kpartition.graph import CutWitness, Graph, component_of
from kpartition.moves import (
    FINISHING,
    BridgeHigher,
    apply_move,
    certify_cut,
    check_state,
    move_kind,
    select_move,
)

__all__ = [
    "Partition",
    "SolveReport",
    "TraceEvent",
    "augment_once",
    "certify_cut",
    "default_budget",
    "solve",
    "solve_single_part",
]

TRACE_TAIL = 20


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))


@dataclass(frozen=True)
class TraceEvent:
    """One engine step, as written to a trace file."""

    step: int
    augmentation: int
    grow: int
    kind: str
    before: tuple
    after: tuple
    cmp: str
    sizes: tuple
    bridge: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "augmentation": self.augmentation,
            "grow": self.grow,
            "kind": self.kind,
            "before": list(self.before),
            "after": list(self.after),
            "cmp": self.cmp,
            "sizes": list(self.sizes),
            "bridge": self.bridge,
        }

    @classmethod
    def from_dict(cls, d: dict) -> TraceEvent:
        fields = {"step", "augmentation", "grow", "kind", "before", "after", "cmp", "sizes", "bridge"}
        if set(d) != fields:
            raise InputError(f"trace event fields {sorted(d)} differ from {sorted(fields)}")
        bridge = d["bridge"]
        if bridge is not None:
            bridge = dict(bridge, owners=list(bridge["owners"]))
        return cls(
            d["step"], d["augmentation"], d["grow"], d["kind"],
            tuple(d["before"]), tuple(d["after"]), d["cmp"], tuple(d["sizes"]), bridge,
        )


@dataclass
class SolveReport:
    partition: Optional[Partition] = None
    failure: Optional[Exception] = None
    move_counts: Counter = field(default_factory=Counter)
    steps: int = 0
    augmentations: int = 0

    @property
    def ok(self) -> bool:
        return self.partition is not None


def default_budget(n: int) -> int:
    return 10 * n ** 3


def _bridge_data(move) -> Optional[dict]:
    bridge = getattr(move, "bridge", None)
    if bridge is None:
        return None
    return {"a": bridge.a, "b": bridge.b, "owners": sorted(bridge.owners), "rank": bridge.rank, "w": move.w}


def _check_parts(problem: Problem, parts) -> tuple:
    parts = tuple(frozenset(p) for p in parts)
    if len(parts) != problem.k:
        raise InputError(f"expected {problem.k} parts, got {len(parts)}")
    return parts


def augment_once(
    problem: Problem,
    parts,
    grow: int,
    *,
    budget: Optional[int] = None,
    sink: Optional[Callable] = None,
    observer: Optional[Callable] = None,
    step0: int = 0,
    augmentation: int = 0,
    counts: Optional[Counter] = None,
) -> tuple:
    """Add one vertex to ``parts[grow]`` keeping every other part's size.

    All cascades start out null. Moves are applied until one of them
    finishes the augmentation. ``sink`` receives a TraceEvent per move and
    ``observer(before, move, after)`` the configurations themselves.

    Raises NotKConnected when no move applies and ProgressStall when the
    budget runs out.
    """
    if not isinstance(grow, int) or not 0 <= grow < problem.k:
        raise InputError(f"grow index {grow!r} out of range for {problem.k} parts")
    parts = _check_parts(problem, parts)
    g = problem.graph
    if sum(len(p) for p in parts) >= g.n:
        raise InputError("no free vertex left to absorb")
    cfg = Configuration.null(g, problem.terminals, parts, root=grow)
    budget = default_budget(g.n) if budget is None else budget
    counts = Counter() if counts is None else counts
    tail: deque = deque(maxlen=TRACE_TAIL)
    # potential at the start of the current run of BridgeHigher moves
    anchor = potential(cfg)
    for step in range(budget):
        choice = select_move(cfg)
        if isinstance(choice, CutWitness):
            raise NotKConnected(choice)
        before = potential(cfg)
        nxt = apply_move(cfg, choice)
        kind = move_kind(choice)
        counts[kind] += 1
        finished = isinstance(choice, FINISHING)
        if finished:
            after = ()
            cmp = "n/a"
        else:
            check_state(nxt)
            after = potential(nxt)
            cmp = compare_potential(after, before)
            if not isinstance(choice, BridgeHigher):
                if compare_potential(after, anchor) != "greater":
                    raise InvariantError(f"{kind} did not improve on {anchor}: got {after}", nxt.dump())
                anchor = after
        event = TraceEvent(step0 + step, augmentation, grow, kind, before, after, cmp, nxt.sizes(), _bridge_data(choice))
        tail.append(event)
        if sink is not None:
            sink(event)
        if observer is not None:
            observer(cfg, choice, nxt)
        if finished:
            new_parts = nxt.parts
            old_sizes, new_sizes = [len(p) for p in parts], [len(p) for p in new_parts]
            old_sizes[grow] += 1
            if old_sizes != new_sizes or any(t not in p for t, p in zip(problem.terminals, new_parts)):
                raise InvariantError("augmentation broke the size or terminal contract", nxt.dump())
            return new_parts
        cfg = nxt
    raise ProgressStall(budget, list(tail))


def solve(
    problem: Problem,
    *,
    budget: Optional[int] = None,
    sink: Optional[Callable] = None,
    observer: Optional[Callable] = None,
) -> SolveReport:
    """Build the partition by repeated augmentation, smallest deficient part first."""
    report = SolveReport()
    parts = [frozenset({t}) for t in problem.terminals]
    while True:
        deficient = [i for i, (p, s) in enumerate(zip(parts, problem.sizes)) if len(p) < s]
        if not deficient:
            break
        grow = deficient[0]
        try:
            parts = list(
                augment_once(
                    problem, parts, grow,
                    budget=budget, sink=sink, observer=observer,
                    step0=report.steps, augmentation=report.augmentations,
                    counts=report.move_counts,
                )
            )
        except (NotKConnected, ProgressStall) as exc:
            report.failure = exc
            report.steps = sum(report.move_counts.values())
            return report
        report.steps = sum(report.move_counts.values())
        report.augmentations += 1
    report.partition = Partition(parts)
    return report


def solve_single_part(graph: Graph, terminal: int, size: int) -> Partition:
    """The one-part case: the first ``size`` vertices reached by BFS from ``terminal``.

    Raises NotKConnected when the terminal's component is too small.
    """
    if not 0 <= terminal < graph.n or not 1 <= size <= graph.n:
        raise InputError("terminal or size out of range")
    comp = component_of(graph, set(graph.vertices), terminal)
    if len(comp) < size:
        rest = frozenset(set(graph.vertices) - comp)
        raise NotKConnected(CutWitness(frozenset(), comp, rest))
    order, seen = [terminal], {terminal}
    queue = deque([terminal])
    while queue and len(order) < size:
        x = queue.popleft()
        for y in sorted(graph.adj[x]):
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return Partition((frozenset(order[:size]),))
