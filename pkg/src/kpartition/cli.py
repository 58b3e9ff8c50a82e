"""Command-line entry point.

Exit codes: 0 success or verified, 2 invalid input, 3 not k-connected
(witness printed as JSON), 4 progress stall (trace tail printed),
5 verification failed or no partition exists.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from kpartition import generators
from kpartition.errors import InputError, NotKConnected, ProgressStall
from kpartition.formats import (
    dumps,
    emit_dot,
    emit_graph,
    emit_partition,
    emit_trace_event,
    emit_witness,
    parse_graph,
    parse_partition,
    parse_problem_document,
)
from kpartition.graph import vertex_connectivity_at_least
from kpartition.oracle import brute_force_partition, verify_partition
from kpartition.solver import Partition, solve, solve_single_part

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_K_CONNECTED = 3
EXIT_STALL = 4
EXIT_VERIFY = 5


def exit_code(result) -> int:
    """Map a SolveReport, VerifyReport or failure to the process exit code."""
    failure = getattr(result, "failure", result)
    if isinstance(failure, NotKConnected):
        return EXIT_NOT_K_CONNECTED
    if isinstance(failure, ProgressStall):
        return EXIT_STALL
    if isinstance(failure, InputError):
        return EXIT_INPUT
    if hasattr(result, "violations"):
        return EXIT_OK if result.ok else EXIT_VERIFY
    if getattr(result, "partition", None) is not None:
        return EXIT_OK
    raise TypeError(f"no exit code for {result!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _load_problem(path: str):
    return parse_problem_document(_read(path), Path(path).parent)


def cmd_solve(args) -> int:
    doc = _load_problem(args.problem)
    if len(doc.terminals) == 1:
        try:
            partition = solve_single_part(doc.graph, doc.terminals[0], doc.sizes[0])
        except NotKConnected as exc:
            print(emit_witness(exc.witness))
            return EXIT_NOT_K_CONNECTED
        _write(args.output, emit_partition(partition))
        if args.dot:
            Path(args.dot).write_text(emit_dot(partition, doc.graph, doc.terminals))
        return EXIT_OK

    problem = doc.to_problem()
    trace = open(args.trace, "w") if args.trace else None
    try:
        sink = (lambda ev: trace.write(emit_trace_event(ev) + "\n")) if trace else None
        report = solve(problem, budget=args.budget, sink=sink)
    finally:
        if trace:
            trace.close()
    code = exit_code(report)
    if code == EXIT_NOT_K_CONNECTED:
        print(emit_witness(report.failure.witness))
    elif code == EXIT_STALL:
        for ev in report.failure.trace_tail:
            print(emit_trace_event(ev))
    else:
        _write(args.output, emit_partition(report.partition))
        if args.dot:
            Path(args.dot).write_text(emit_dot(report.partition, problem.graph, problem.terminals))
    return code


def cmd_verify(args) -> int:
    doc = _load_problem(args.problem)
    partition = parse_partition(_read(args.partition))
    report = verify_partition(doc, partition)
    print(dumps({"ok": report.ok, "violations": [list(v) for v in report.violations]}))
    return exit_code(report)


def cmd_oracle(args) -> int:
    doc = _load_problem(args.problem)
    parts = brute_force_partition(doc)
    if parts is None:
        print(dumps({"parts": None}))
        return EXIT_VERIFY
    _write(args.output, emit_partition(Partition(parts)))
    return EXIT_OK


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--param expects KEY=VALUE, got {item!r}")
        out[key] = value
    return out


def cmd_gen(args) -> int:
    params = _params(args.param)
    try:
        if args.family == "complete":
            g = generators.complete(args.n)
        elif args.family == "cycle":
            g = generators.cycle(args.n)
        elif args.family == "circulant":
            offsets = [int(x) for x in params.get("offsets", "1,2").split(",")]
            g = generators.circulant(args.n, offsets)
        elif args.family == "hypercube":
            g = generators.hypercube(int(params.get("d", args.n)))
        else:
            if "p" not in params:
                raise InputError("random family needs --param p=PROBABILITY")
            g, _ = generators.random_k_connected(args.n, float(params["p"]), args.k or 1, args.seed)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad generator parameters: {exc}") from None
    if args.k and args.family != "random":
        check = vertex_connectivity_at_least(g, args.k)
        if not check.ok:
            print(emit_witness(check.witness) if check.witness else dumps({"cut": None, "reason": check.reason}))
            return EXIT_NOT_K_CONNECTED
    _write(args.output, emit_graph(g))
    return EXIT_OK


def cmd_connectivity(args) -> int:
    g = parse_graph(_read(args.graph))
    check = vertex_connectivity_at_least(g, args.k)
    if check.ok:
        print(dumps({"k_connected": True}))
        return EXIT_OK
    if check.witness is None:
        print(dumps({"cut": None, "reason": check.reason}))
    else:
        print(emit_witness(check.witness))
    return EXIT_NOT_K_CONNECTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kpartition", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="partition a k-connected graph")
    p.add_argument("--problem", required=True)
    p.add_argument("--trace", help="write one JSON trace event per move")
    p.add_argument("--dot", help="write a Graphviz rendering of the result")
    p.add_argument("--budget", type=int, help="move budget per augmentation (default 10 n^3)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a partition against a problem")
    p.add_argument("--problem", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search (n <= 14)")
    p.add_argument("--problem", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("--family", required=True, choices=["complete", "cycle", "circulant", "hypercube", "random"])
    p.add_argument("--n", type=int, help="vertex count (dimension for hypercube)")
    p.add_argument("--param", action="append", help="offsets=1,2 | d=3 | p=0.5")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("connectivity", help="test k-connectivity")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_connectivity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
