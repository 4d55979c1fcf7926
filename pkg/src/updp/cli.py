"""Command-line interface.

Exit codes: 0 success, 1 no solution (or unsatisfied assignment, failed
certification), 2 invalid input, 3 search budget exceeded, 64 usage error,
74 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .certify import SUITES, all_pass, certify
from .dot import format_paths, instance_dot, parse_paths
from .gadgets import Drop, Entry, build_column, build_crossing_gadget, build_routing_gadget, build_row
from .graph import Instance, InstanceSyntaxError, parse_instance, serialize_instance, validate_drawing, validate_instance
from .oracle import SearchBudget, exact_solve
from .order import OrderCycleError, hasse_dot
from .reduction import (
    DimacsError,
    output_from_files,
    parse_dimacs,
    parse_labels,
    reduce,
    serialize_labels,
    witness_from_assignment,
)
from .rightmost import rightmost_path
from .solver import Status, TooManyPairs, solve, verify_solution

EXIT_OK = 0
EXIT_NO = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
EXIT_IO = 74

STATUS_EXIT = {Status.SOLVED: EXIT_OK, Status.NO_SOLUTION: EXIT_NO, Status.BUDGET_EXCEEDED: EXIT_BUDGET}


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    pass


@dataclass
class RunReport:
    """Line-oriented ``key=value`` summary of one run."""

    command: str
    status: str = ""
    fields: dict[str, object] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def render(self) -> str:
        lines = [f"command={self.command}", f"status={self.status}"]
        lines += [f"{k}={v}" for k, v in self.fields.items()]
        lines += [f"violation={v}" for v in self.violations]
        return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_instance(path: str, check: bool = True) -> Instance:
    try:
        inst = parse_instance(_read(path))
    except InstanceSyntaxError as exc:
        raise InvalidInput(f"{path}: {exc}") from None
    if check:
        report = validate_drawing(inst.drawing)
        report.violations += validate_instance(inst).violations
        if not report.ok:
            raise InvalidInput(f"{path}: invalid instance\n{report}")
    return inst


def cmd_validate(args) -> int:
    inst = _load_instance(args.instance, check=False)
    report = validate_drawing(inst.drawing)
    report.violations += validate_instance(inst).violations
    print(report)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    run = RunReport(" ".join(["solve", args.instance] + (["--oracle"] if args.oracle else [])))
    started = time.perf_counter()
    if args.oracle:
        out = exact_solve(inst, SearchBudget(args.budget))
    else:
        try:
            out = solve(inst, max_k=args.max_k, force=args.force, parallel=args.parallel, workers=args.workers)
        except TooManyPairs as exc:
            raise InvalidInput(str(exc)) from None
    elapsed = time.perf_counter() - started
    run.status = out.status.value
    run.fields.update(k=inst.k, vertices=len(inst.drawing), edges=len(inst.drawing.edges))
    run.fields.update(
        permutations=out.stats.permutations, rightmost_calls=out.stats.rightmost_calls, nodes=out.stats.nodes
    )
    if out.permutation is not None:
        run.fields["order"] = ",".join(map(str, out.permutation))
    if out.solution is not None:
        check = verify_solution(inst, out.solution)
        run.violations = [str(v) for v in check.violations]
        if not check.ok:  # never expected; reported rather than hidden
            print(check, file=sys.stderr)
            run.status = "INVALID_SOLUTION"
    if not args.deterministic:
        run.fields["wall_seconds"] = f"{elapsed:.6f}"
    if args.report:
        _write(args.report, run.render())
    if out.solution is not None:
        sys.stdout.write(format_paths(out.solution))
        return EXIT_OK if run.status == Status.SOLVED.value else EXIT_INVALID
    print(out.status.value)
    return STATUS_EXIT[out.status]


def cmd_rightmost(args) -> int:
    inst = _load_instance(args.instance, check=False)
    report = validate_drawing(inst.drawing)
    if not report.ok:
        raise InvalidInput(f"{args.instance}: invalid drawing\n{report}")
    for v in (args.source, args.target):
        if v not in inst.drawing.coords:
            raise InvalidInput(f"unknown vertex {v}")
    path = rightmost_path(inst.drawing, args.source, args.target)
    print("NONE" if path is None else " ".join(map(str, path)))
    return EXIT_OK if path is not None else EXIT_NO


def cmd_order(args) -> int:
    inst = _load_instance(args.instance, check=False)
    try:
        paths = parse_paths(_read(args.paths))
    except ValueError as exc:
        raise InvalidInput(f"{args.paths}: {exc}") from None
    # the relation is only meaningful for disjoint paths of the drawing
    check = verify_solution(inst.with_pairs((p[0], p[-1]) for p in paths), paths)
    if not check.ok:
        raise InvalidInput(f"paths are not disjoint paths of the drawing\n{check}")
    try:
        _write(args.output, hasse_dot(paths, inst.drawing))
    except OrderCycleError as exc:
        raise InvalidInput(str(exc)) from None
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        cnf = parse_dimacs(_read(args.cnf))
    except DimacsError as exc:
        raise InvalidInput(f"{args.cnf}: {exc}") from None
    out = reduce(cnf)
    _write(args.output, serialize_instance(out.instance))
    if args.labels:
        _write(args.labels, serialize_labels(out.labels))
    print(f"vertices={len(out.instance.drawing)} edges={len(out.instance.drawing.edges)} pairs={out.instance.k}",
          file=sys.stderr)
    return EXIT_OK


def _parse_bits(text: str) -> tuple[int, ...]:
    bits = text.replace(",", "").replace(" ", "")
    if not bits or set(bits) - {"0", "1"}:
        raise InvalidInput(f"assignment must be a string of 0/1 digits, got {text!r}")
    return tuple(int(b) for b in bits)


def cmd_witness(args) -> int:
    inst = _load_instance(args.instance, check=False)
    try:
        labels = parse_labels(_read(args.labels))
        out = output_from_files(inst, labels)
    except (ValueError, KeyError) as exc:
        raise InvalidInput(f"{args.labels}: {exc}") from None
    beta = _parse_bits(args.assignment)
    if len(beta) != out.cnf.n:
        raise InvalidInput(f"assignment has {len(beta)} bits, the formula has {out.cnf.n} variables")
    ps = witness_from_assignment(out, beta)
    if ps is None:
        print("UNSATISFIED: the assignment falsifies the formula")
        return EXIT_NO
    # witness_from_assignment verifies; checked again here before printing
    assert verify_solution(out.instance, ps).ok
    sys.stdout.write(format_paths(ps))
    return EXIT_OK


def cmd_gadget(args) -> int:
    drop = Drop(args.drop) if args.drop else Drop.NONE
    entry = Entry(args.entry) if args.entry else None
    if args.kind == "routing":
        g = build_routing_gadget()
    elif args.kind == "crossing":
        g = build_crossing_gadget(drop, entry)
    elif args.kind == "row":
        g = build_row(args.len, entry or Entry.PLUS, [drop] * args.len)
    else:
        entries = [entry or Entry.PLUS] * args.len
        g = build_column(args.len, [drop] * args.len, entries)
    _write(args.output, serialize_instance(g.instance()))
    if args.labels:
        _write(args.labels, serialize_labels(g.labels))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    inst = _load_instance(args.instance, check=False)
    solution = None
    if args.solution:
        try:
            solution = parse_paths(_read(args.solution))
        except ValueError as exc:
            raise InvalidInput(f"{args.solution}: {exc}") from None
    names = None
    if args.labels:
        names = {v: k for k, v in parse_labels(_read(args.labels)).items()}
    _write(args.output, instance_dot(inst, solution, names))
    return EXIT_OK


def cmd_certify(args) -> int:
    def show(check) -> None:
        print(check.line(), flush=True)

    started = time.perf_counter()
    checks = certify(args.suite or list(SUITES), progress=show)
    ok = all_pass(checks)
    failed = [c.name for c in checks if c.gating and not c.ok]
    print(f"status={'PASS' if ok else 'FAIL'} checks={len(checks)} failed={len(failed)} "
          f"nodes={sum(c.nodes for c in checks)} seconds={time.perf_counter() - started:.1f}")
    return EXIT_OK if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="updp", description="Disjoint paths in upward planar drawings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a drawing and its terminal pairs")
    s.add_argument("instance")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="decide an instance, printing one path per pair")
    s.add_argument("instance")
    s.add_argument("--oracle", action="store_true", help="use the exact backtracking search")
    s.add_argument("--max-k", type=int, default=10)
    s.add_argument("--force", action="store_true", help="allow k above --max-k")
    s.add_argument("--parallel", action="store_true")
    s.add_argument("--workers", type=int)
    s.add_argument("--budget", type=int, default=10**7, help="node budget of --oracle")
    s.add_argument("--report", metavar="FILE")
    s.add_argument("--deterministic", action="store_true", help="leave wall-clock fields out of the report")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("rightmost", help="print the right-most path between two vertices")
    s.add_argument("instance")
    s.add_argument("--from", dest="source", type=int, required=True)
    s.add_argument("--to", dest="target", type=int, required=True)
    s.set_defaults(func=cmd_rightmost)

    s = sub.add_parser("order", help="Hasse diagram of the right-of order on disjoint paths")
    s.add_argument("instance")
    s.add_argument("--paths", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("reduce", help="build the disjoint-paths instance of a DIMACS formula")
    s.add_argument("cnf")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--labels")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("witness", help="solution of a reduction instance from a satisfying assignment")
    s.add_argument("instance")
    s.add_argument("--labels", required=True)
    s.add_argument("--assignment", required=True, help="bits for V1..Vn, e.g. 101")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("gadget", help="write a standalone gadget instance")
    s.add_argument("kind", choices=["routing", "crossing", "row", "column"])
    s.add_argument("--drop", choices=[d.value for d in Drop if d is not Drop.NONE])
    s.add_argument("--entry", choices=[e.value for e in Entry], help="lane of the variable path")
    s.add_argument("--len", type=int, default=1)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--labels")
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("export-dot", help="Graphviz rendering, optionally with a solution")
    s.add_argument("instance")
    s.add_argument("--solution")
    s.add_argument("--labels")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("certify", help="exhaustively check the gadget properties")
    s.add_argument("--suite", action="append", choices=list(SUITES))
    s.set_defaults(func=cmd_certify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "len", 1) < 1:
            raise UsageError("--len must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
