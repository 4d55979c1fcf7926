"""Exhaustive oracle certification of the gadget properties.

Each check runs the exact search of :mod:`updp.oracle` on a gadget and
records whether the expected behaviour holds. Checks marked non-gating are
supporting facts printed for context; they do not decide the verdict.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .gadgets import (
    Drop,
    Entry,
    Gadget,
    build_column,
    build_crossing_gadget,
    build_routing_gadget,
    build_row,
    crossing_edge,
    uses_edge,
)
from .graph import Instance, PathSet
from .oracle import SearchBudget, complete, count_solutions, exact_solve
from .rightmost import path_vertices, reachable_from
from .solver import Status

MAX_NODES = 10**7

# variable path, clause path and the X path of a crossing gadget, in the
# gadget-level names; the Z path is the continuation of the variable path
CROSSING_PATHS = {
    Entry.PLUS: {
        "entry": "H^in -> b1 -> m2 -> m4 -> b3 -> W",
        "X": "X -> b2 -> m3 -> m5 -> m6 -> m8 -> m10 -> Y",
        "Z": "Z -> m7 -> m9 -> H^out",
        "T": "T -> m1 -> b4 -> m0 -> b5 -> b6 -> m11 -> m12 -> B",
    },
    Entry.MINUS: {
        "entry": "L^in -> m3 -> m5 -> W",
        "X": "X -> m2 -> m4 -> b4 -> m7 -> m9 -> b6 -> Y",
        "Z": "Z -> b5 -> m8 -> m10 -> m11 -> L^out",
        "T": "T -> m1 -> b1 -> b2 -> b3 -> m0 -> m6 -> m12 -> B",
    },
}
EXITS = {Entry.PLUS: ("H^out", "L^out"), Entry.MINUS: ("L^out", "H^out")}
NEEDED_EDGE = {Entry.PLUS: Drop.E_PLUS, Entry.MINUS: Drop.E_MINUS}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    gating: bool = True
    nodes: int = 0
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        if not self.gating:
            verdict = "note:" + verdict.lower()
        return f"{verdict:10} {self.name:40} {self.detail}"


class _Recorder:
    def __init__(self, progress: Callable[[Check], None] | None):
        self.checks: list[Check] = []
        self.progress = progress
        self.nodes = 0
        self.started = time.perf_counter()

    def budget(self) -> SearchBudget:
        b = SearchBudget(MAX_NODES)
        self._budgets.append(b)
        return b

    def begin(self) -> None:
        self._budgets: list[SearchBudget] = []
        self.started = time.perf_counter()

    def add(self, name: str, ok: bool, detail: str = "", gating: bool = True) -> None:
        nodes = sum(b.used for b in self._budgets)
        over = any(b.used > b.max_nodes for b in self._budgets)
        if over:
            ok, detail = False, detail + " (node budget exceeded)"
        check = Check(name, ok, detail, gating, nodes, time.perf_counter() - self.started)
        self.checks.append(check)
        if self.progress is not None:
            self.progress(check)
        self.begin()


def _joined(g: Gadget, path: Sequence[int], strip: str = "") -> str:
    return " -> ".join(label[len(strip):] if label.startswith(strip) else label for label in g.label_path(path))


def _with_main(g: Gadget, extra: Iterable[tuple[str, str]]) -> tuple[Instance, int]:
    """The gadget's instance with *extra* structural pairs placed before the box pairs."""
    extra_pairs = [(g[s], g[t]) for s, t in extra]
    pairs = g.pairs[: g.main_pairs] + extra_pairs + g.pairs[g.main_pairs :]
    return Instance(g.drawing(), tuple(pairs)), g.main_pairs + len(extra_pairs)


def _open(inst: Instance, sol: PathSet, s: int, t: int) -> bool:
    return t in reachable_from(inst.drawing, s, path_vertices(sol))


def certify_routing(rec: _Recorder) -> None:
    g = build_routing_gadget()
    inst = g.instance()
    p = g.ports

    out = exact_solve(inst, rec.budget())
    rec.add("routing: solution exists", out.status is Status.SOLVED, out.status.value)

    res = count_solutions(inst, cap=10**6, budget=rec.budget())
    sols = res.solutions
    rec.add("routing: all solutions enumerated", res.complete and bool(sols), f"{len(sols)} solutions", gating=False)

    straight = [(_open(inst, s, p["e_t"], p["e_b"]), _open(inst, s, p["e_l"], p["e_r"])) for s in sols]
    turning = [(_open(inst, s, p["e_t"], p["e_r"]), _open(inst, s, p["e_l"], p["e_b"])) for s in sols]
    rec.add(
        "routing: no turning route in any residual",
        res.complete and not any(a or b for a, b in turning),
        f"(t->r, l->b) open per solution: {turning}",
    )
    rec.add(
        "routing: both straight routes in every residual",
        res.complete and all(a and b for a, b in straight),
        f"(t->b, l->r) open per solution: {straight}",
    )
    rec.add(
        "routing: each straight route in some residual",
        any(a for a, _ in straight) and any(b for _, b in straight),
        "",
        gating=False,
    )

    cross = Instance(inst.drawing, ((p["e_l"], p["e_r"]), (p["e_t"], p["e_b"])))
    out = exact_solve(cross, rec.budget())
    rec.add("routing: straight routes exclusive", out.status is Status.NO_SOLUTION, out.status.value)


def certify_crossing(rec: _Recorder) -> None:
    for entry in Entry:
        tag = f"crossing {entry.value}"
        good, bad = EXITS[entry]
        want = CROSSING_PATHS[entry]
        g = build_crossing_gadget(Drop.NONE, entry)
        inst = g.instance()
        res = count_solutions(inst, cap=2, distinct_on=g.main_pairs, budget=rec.budget())
        found = [
            "; ".join(_joined(g, q) for q in sol[: g.main_pairs]) for sol in res.solutions
        ]
        rec.add(f"{tag}: three paths unique", res.complete and res.count == 1, f"{res.count} found: {found}")

        expected = [want["entry"], want["T"], want["X"]]
        got = [_joined(g, q) for q in res.solutions[0][: g.main_pairs]] if res.solutions else []
        rec.add(f"{tag}: three paths match list", got == expected, "" if got == expected else f"got {got}")

        # the residual has to offer Z the right exit and never the wrong one,
        # whichever of the found routings is used
        fine = []
        for sol in res.solutions:
            fixed = dict(enumerate(sol[: g.main_pairs]))
            a = complete(g.instance([("Z", good)]), fixed, rec.budget()).status
            b = complete(g.instance([("Z", bad)]), fixed, rec.budget()).status
            fine.append((a.value, b.value))
        ok = all(a == "SOLVED" and b == "NO_SOLUTION" for a, b in fine)
        rec.add(f"{tag}: residual exits Z->{good} only", res.complete and ok, f"(Z->{good}, Z->{bad}) per routing: {fine}")

        ext, n = _with_main(g, [("Z", good)])
        res4 = count_solutions(ext, cap=2, distinct_on=n, budget=rec.budget())
        got4 = {}
        if res4.solutions:
            sol = res4.solutions[0]
            names = ["entry", "T", "X", "Z"]
            got4 = {k: _joined(g, q) for k, q in zip(names, sol[:n])}
        ok = res4.complete and res4.count == 1 and got4 == want
        rec.add(f"{tag}: four-path list unique and exact", ok, f"{res4.count} found" + ("" if got4 == want else f", got {got4}"))


def certify_rows(rec: _Recorder) -> None:
    for s in (1, 2):
        for variant in Entry:
            tag = f"row s={s} {variant.value}"
            g = build_row(s, variant)
            res = count_solutions(g.instance(), cap=2, distinct_on=g.main_pairs, budget=rec.budget())
            rec.add(f"{tag}: unique", res.complete and res.count == 1, f"{res.count} found")
            gate = "H^in" if variant is Entry.PLUS else "L^in"
            bad = []
            for sol in res.solutions:
                if g[f"G1.{gate}"] not in sol[0]:
                    bad.append("entry")
                for j in range(1, s):
                    zpath = sol[1 + s + (j - 1)]
                    if g[f"G{j + 1}.{gate}"] not in zpath:
                        bad.append(f"Z{j}")
            rec.add(f"{tag}: passes through {gate}", bool(res.solutions) and not bad, ", ".join(bad))


def certify_columns(rec: _Recorder) -> None:
    for t in (1, 2):
        for starts in itertools.product(Entry, repeat=t):
            tag = f"column t={t} {''.join(e.value for e in starts)}"
            g = build_column(t, [Drop.NONE] * t, list(starts))
            out = exact_solve(g.instance(), rec.budget())
            rec.add(f"{tag}: solvable", out.status is Status.SOLVED, out.status.value)
            if out.solution is not None:
                q = out.solution[0]
                wrong = []
                for i, e in enumerate(starts, 1):
                    plus = uses_edge(q, crossing_edge(g, Drop.E_PLUS, f"G{i}."))
                    minus = uses_edge(q, crossing_edge(g, Drop.E_MINUS, f"G{i}."))
                    if (plus, minus) != (e is Entry.PLUS, e is Entry.MINUS):
                        wrong.append(f"G{i}: e+={plus} e-={minus}")
                rec.add(f"{tag}: clause path uses matching edge", not wrong, "; ".join(wrong))
            for i, e in enumerate(starts):
                drops = [Drop.NONE] * t
                drops[i] = NEEDED_EDGE[e]
                gd = build_column(t, drops, list(starts))
                out = exact_solve(gd.instance(), rec.budget())
                rec.add(
                    f"{tag}: no route without {NEEDED_EDGE[e].value} in G{i + 1}",
                    out.status is Status.NO_SOLUTION,
                    out.status.value,
                )


SUITES = {
    "routing": certify_routing,
    "crossing": certify_crossing,
    "rows": certify_rows,
    "columns": certify_columns,
}


def certify(
    suites: Iterable[str] = tuple(SUITES),
    progress: Callable[[Check], None] | None = None,
) -> list[Check]:
    rec = _Recorder(progress)
    for name in suites:
        rec.begin()
        SUITES[name](rec)
    return rec.checks


def all_pass(checks: Iterable[Check]) -> bool:
    return all(c.ok for c in checks if c.gating)
