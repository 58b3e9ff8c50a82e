"""JSON documents, JSONL traces and DOT rendering.

Canonical JSON has sorted keys and ascending vertex lists; vertices are
0-indexed everywhere.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import NamedTuple, Optional, Union

from kpartition.config import Configuration, Problem, find_bridges, is_valid
from kpartition.errors import InputError
from kpartition.graph import CutWitness, Graph
from kpartition.solver import Partition, TraceEvent


class ProblemDocument(NamedTuple):
    graph: Graph
    terminals: tuple
    sizes: tuple

    def to_problem(self) -> Problem:
        return Problem(self.graph, self.terminals, self.sizes)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _fields(doc, what: str, required: set, optional: set = frozenset()) -> None:
    if not isinstance(doc, dict):
        raise InputError(f"{what}: expected a JSON object")
    unknown = set(doc) - required - optional
    if unknown:
        raise InputError(f"{what}: unknown fields {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise InputError(f"{what}: missing fields {sorted(missing)}")


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what}: expected an integer, got {x!r}")
    return x


def _int_list(xs, what: str) -> list:
    if not isinstance(xs, list):
        raise InputError(f"{what}: expected a list")
    return [_int(x, what) for x in xs]


# ---------------------------------------------------------------- graphs


def graph_from_obj(doc) -> Graph:
    _fields(doc, "graph", {"n", "edges"})
    n = _int(doc["n"], "graph.n")
    if n < 0:
        raise InputError("graph.n must be nonnegative")
    if not isinstance(doc["edges"], list):
        raise InputError("graph.edges: expected a list")
    pairs = []
    for pos, e in enumerate(doc["edges"]):
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"graph.edges[{pos}]: expected a pair [u, v]")
        u, v = _int(e[0], f"graph.edges[{pos}]"), _int(e[1], f"graph.edges[{pos}]")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"graph.edges[{pos}]: vertex out of range 0..{n - 1}")
        pairs.append((u, v))
    try:
        return Graph.from_edges(n, pairs)
    except InputError as exc:
        raise InputError(f"graph: {exc}") from None


def graph_to_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


def parse_graph(text: str) -> Graph:
    return graph_from_obj(_load(text, "graph"))


def emit_graph(g: Graph) -> str:
    return dumps(graph_to_obj(g))


# ---------------------------------------------------------------- problems


def parse_problem_document(text: str, base: Optional[Path] = None) -> ProblemDocument:
    """Parse a problem; ``graph_path`` is resolved against ``base``. Allows a single terminal."""
    doc = _load(text, "problem")
    _fields(doc, "problem", {"terminals", "sizes"}, {"graph", "graph_path"})
    if ("graph" in doc) == ("graph_path" in doc):
        raise InputError("problem: give exactly one of 'graph' and 'graph_path'")
    if "graph" in doc:
        g = graph_from_obj(doc["graph"])
    else:
        path = Path(doc["graph_path"])
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            g = parse_graph(path.read_text())
        except OSError as exc:
            raise InputError(f"problem.graph_path: {exc}") from None
    terminals = tuple(_int_list(doc["terminals"], "problem.terminals"))
    sizes = tuple(_int_list(doc["sizes"], "problem.sizes"))
    if not terminals or len(terminals) != len(sizes):
        raise InputError("problem: terminals and sizes must be nonempty and of equal length")
    if len(set(terminals)) != len(terminals) or not all(0 <= t < g.n for t in terminals):
        raise InputError("problem: terminals must be distinct vertices of the graph")
    if not all(s >= 1 for s in sizes) or sum(sizes) > g.n:
        raise InputError("problem: sizes must be positive with sum at most n")
    return ProblemDocument(g, terminals, sizes)


def parse_problem(text: str, base: Optional[Path] = None) -> Problem:
    return parse_problem_document(text, base).to_problem()


def emit_problem(problem: Union[Problem, ProblemDocument]) -> str:
    return dumps({
        "graph": graph_to_obj(problem.graph),
        "terminals": list(problem.terminals),
        "sizes": list(problem.sizes),
    })


# ---------------------------------------------------------------- partitions


def parse_partition(text: str) -> Partition:
    doc = _load(text, "partition")
    _fields(doc, "partition", {"parts"})
    if not isinstance(doc["parts"], list):
        raise InputError("partition.parts: expected a list")
    parts = []
    for i, p in enumerate(doc["parts"]):
        vs = _int_list(p, f"partition.parts[{i}]")
        if len(set(vs)) != len(vs):
            raise InputError(f"partition.parts[{i}]: repeated vertex")
        parts.append(frozenset(vs))
    return Partition(parts)


def emit_partition(partition: Partition) -> str:
    return dumps({"parts": [sorted(p) for p in partition.parts]})


def witness_to_obj(w: CutWitness) -> dict:
    return {"cut": sorted(w.cut), "sideA": sorted(w.side_a), "sideB": sorted(w.side_b)}


def emit_witness(w: CutWitness) -> str:
    return dumps(witness_to_obj(w))


# ---------------------------------------------------------------- traces


def emit_trace_event(ev: TraceEvent) -> str:
    return dumps(ev.to_dict())


def parse_trace_event(line: str) -> TraceEvent:
    return TraceEvent.from_dict(_load(line, "trace event"))


# ---------------------------------------------------------------- DOT

PALETTE = ["#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69", "#fccde5", "#ffffb3", "#bc80bd", "#ccebc5"]
SHADED = ["#3a9e8f", "#d98a1e", "#7a74b8", "#d9473a", "#3f7fad", "#7aa83a", "#d97fae", "#d9d94a", "#8a3f8b", "#86b890"]


def emit_dot(target: Union[Configuration, Partition], graph: Optional[Graph] = None, terminals=()) -> str:
    """Render a configuration or partition for Graphviz.

    Parts are colour-filled, reservoir vertices get a darker shade of their
    part's colour, cascade vertices are double circles labelled with their
    position, terminals are boxes and bridges are bold red edges.
    """
    if isinstance(target, Configuration):
        g, parts, terminals = target.graph, target.parts, target.terminals
        cascades, reservoirs, ranks = target.cascades, target.reservoirs, target.ranks
        bridges = find_bridges(target) if is_valid(target) else []
    else:
        if graph is None:
            raise InputError("rendering a partition needs its graph")
        g, parts = graph, target.parts
        cascades, reservoirs, ranks, bridges = (), {}, {}, []
    owner = {v: i for i, p in enumerate(parts) for v in p}
    shaded = set().union(*reservoirs.values()) if reservoirs else set()
    position = {w: (i, j + 1) for i, c in enumerate(cascades) for j, w in enumerate(c)}
    bridge_edges = {(min(b.a, b.b), max(b.a, b.b)): b.rank for b in bridges}

    lines = ["graph partition {", '  node [shape=circle, style=filled, fillcolor="#ffffff"];']
    for v in g.vertices:
        attrs = []
        i = owner.get(v)
        label = str(v)
        if i is not None:
            colors = SHADED if v in shaded else PALETTE
            attrs.append(f'fillcolor="{colors[i % len(colors)]}"')
        if v in position:
            _, j = position[v]
            r = ranks.get(v)
            label += f"\\nw{j}" + (f" r{r}" if r is not None else "")
            attrs.append("shape=doublecircle")
        elif v in terminals:
            attrs.append("shape=box")
        attrs.insert(0, f'label="{label}"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in sorted(g.edges):
        if (u, v) in bridge_edges:
            lines.append(f'  {u} -- {v} [color=red, penwidth=2.5, label="r{bridge_edges[(u, v)]}"];')
        elif owner.get(u) is not None and owner.get(u) == owner.get(v):
            lines.append(f"  {u} -- {v} [penwidth=2];")
        else:
            lines.append(f"  {u} -- {v} [color=gray60, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
