"""From CNF formulas to disjoint-paths instances, and back.

A formula with variables V_1..V_n and clauses C_1..C_m becomes a grid of
crossing gadgets: one row per variable and one column per literal
occurrence (j, t), the t-th literal of clause j. A variable path runs along
its row and picks the H or L lane, which encodes its truth value; a clause
path runs down one of its columns and can only get through the gadget of
the literal's own variable if that literal is true.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .gadgets import (
    COLUMN_STEP,
    CROSSING_LAYOUT,
    E_MINUS,
    E_PLUS,
    ROW_STEP,
    Drop,
    Entry,
    Gadget,
    _add_crossing,
    build_crossing_gadget,
    crossing_edge,
)
from .graph import Instance, Path, PathSet, Vertex
from .oracle import SearchBudget, exact_solve
from .solver import verify_solution

# offsets of the extra vertices, in the left-to-right frame
VARIABLE_GAP = 60  # V_i sits this far before H^in / L^in of its first gadget
CLAUSE_GAP = 40  # C_j sits this far before the T of its first column
CLAUSE_RISE = 200  # ... and this far above the T vertices


class DimacsError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Cnf:
    """Clauses as lists of nonzero ints, DIMACS style: ``-3`` is the negation of V_3."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.n < 1:
            raise ValueError("a formula needs at least one variable")
        for j, clause in enumerate(self.clauses, 1):
            if not clause:
                raise ValueError(f"clause {j} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"literal {lit} in clause {j} is out of range")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def columns(self) -> list[tuple[int, int]]:
        """Literal occurrences (j, t), both 1-based, in column order."""
        return [(j, t) for j, clause in enumerate(self.clauses, 1) for t in range(1, len(clause) + 1)]

    def literal(self, j: int, t: int) -> int:
        return self.clauses[j - 1][t - 1]

    def satisfied_by(self, beta: Sequence[int]) -> bool:
        return all(any(_true(lit, beta) for lit in clause) for clause in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        lines += [" ".join(map(str, clause)) + " 0" for clause in self.clauses]
        return "\n".join(lines) + "\n"


def _true(lit: int, beta: Sequence[int]) -> bool:
    return bool(beta[abs(lit) - 1]) == (lit > 0)


def parse_dimacs(text: str) -> Cnf:
    n = m = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):  # end marker used by some benchmark files
            break
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise DimacsError(lineno, "second header line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, "malformed header, counts must be integers") from None
            if n < 1 or m < 0:
                raise DimacsError(lineno, "malformed header, need at least one variable")
            continue
        if n is None:
            raise DimacsError(lineno, "clause before the 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(lineno, f"bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(lineno, "empty clause")
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n:
                raise DimacsError(lineno, f"literal {lit} out of range for {n} variables")
            else:
                current.append(lit)
        last = lineno
    if n is None:
        raise DimacsError(max(last, 1), "missing 'p cnf' header")
    if current:
        raise DimacsError(last, "unterminated clause (missing final 0)")
    if len(clauses) != m:
        raise DimacsError(last, f"header announces {m} clauses, found {len(clauses)}")
    return Cnf(n, tuple(clauses))


def satisfying_assignments(cnf: Cnf) -> list[tuple[int, ...]]:
    """All satisfying 0/1 assignments by truth table, in lexicographic order."""
    return [beta for beta in itertools.product((0, 1), repeat=cnf.n) if cnf.satisfied_by(beta)]


def gadget_name(i: int, j: int, t: int) -> str:
    return f"G[{i},{j},{t}]"


def drop_for(cnf: Cnf, i: int, j: int, t: int) -> Drop:
    """A positive occurrence of V_i loses e^-, a negative one loses e^+."""
    lit = cnf.literal(j, t)
    if abs(lit) != i:
        return Drop.NONE
    return Drop.E_MINUS if lit > 0 else Drop.E_PLUS


@dataclass
class ReductionOutput:
    cnf: Cnf
    instance: Instance
    labels: dict[str, Vertex]
    gadget: Gadget = field(repr=False)
    # pair index of (V_i, W_{i,1,1}) for each variable, and of (C_j, C_j')
    variable_pairs: list[int] = field(default_factory=list)
    clause_pairs: list[int] = field(default_factory=list)

    def label_path(self, path: Sequence[Vertex]) -> list[str]:
        return self.gadget.label_path(path)


def _offset(i: int, c: int) -> tuple[int, int]:
    """Left-to-right frame position of gadget row i, column c (both 1-based)."""
    dx, dy = COLUMN_STEP
    return ((c - 1) * ROW_STEP + (i - 1) * dx, (i - 1) * dy)


def reduce(cnf: Cnf) -> ReductionOutput:
    cols = cnf.columns()
    big_n = len(cols)
    g = Gadget()
    box_pairs: list[tuple[Vertex, Vertex]] = []
    for i in range(1, cnf.n + 1):
        for c, (j, t) in enumerate(cols, 1):
            box_pairs += _add_crossing(g, gadget_name(i, j, t) + ".", _offset(i, c), drop_for(cnf, i, j, t))

    def at(i: int, c: int, name: str) -> str:
        j, t = cols[c - 1]
        return f"{gadget_name(i, j, t)}.{name}"

    # chaining inside rows and columns
    for i in range(1, cnf.n + 1):
        for c in range(1, big_n):
            g.add_edge(at(i, c, "H^out"), at(i, c + 1, "H^in"))
            g.add_edge(at(i, c, "L^out"), at(i, c + 1, "L^in"))
    for i in range(1, cnf.n):
        for c in range(1, big_n + 1):
            g.add_edge(at(i, c, "B"), at(i + 1, c, "T"))

    # variable terminals at both ends of each row
    hx, _ = CROSSING_LAYOUT["H^in"]
    ox, _ = CROSSING_LAYOUT["H^out"]
    for i in range(1, cnf.n + 1):
        x0, y0 = _offset(i, 1)
        g.add_vertex(f"V{i}", (x0 + hx - VARIABLE_GAP, y0))
        x1, y1 = _offset(i, big_n)
        g.add_vertex(f"V{i}'", (x1 + ox + VARIABLE_GAP, y1))
        g.add_edge(f"V{i}", at(i, 1, "H^in"))
        g.add_edge(f"V{i}", at(i, 1, "L^in"))
        g.add_edge(at(i, big_n, "H^out"), f"V{i}'")
        g.add_edge(at(i, big_n, "L^out"), f"V{i}'")

    # clause terminals fan out above row 1 and collect below row n; the
    # columns of one clause are contiguous, so fans of distinct clauses
    # occupy disjoint stretches and never meet
    tx, ty = CROSSING_LAYOUT["T"]
    bx, by = CROSSING_LAYOUT["B"]
    first = 1
    for j, clause in enumerate(cnf.clauses, 1):
        last = first + len(clause) - 1
        x, y = _offset(1, first)
        g.add_vertex(f"C{j}", (x + tx - CLAUSE_GAP, y + ty + CLAUSE_RISE))
        x, y = _offset(cnf.n, last)
        g.add_vertex(f"C{j}'", (x + bx + CLAUSE_GAP, y + by - CLAUSE_RISE))
        for c in range(first, last + 1):
            g.add_edge(f"C{j}", at(1, c, "T"))
            g.add_edge(at(cnf.n, c, "B"), f"C{j}'")
        first = last + 1

    main: list[tuple[Vertex, Vertex]] = []
    variable_pairs = []
    for i in range(1, cnf.n + 1):
        variable_pairs.append(len(main))
        main.append((g[f"V{i}"], g[at(i, 1, "W")]))
        for c in range(1, big_n + 1):
            main.append((g[at(i, c, "X")], g[at(i, c, "Y")]))
            end = at(i, c + 1, "W") if c < big_n else f"V{i}'"
            main.append((g[at(i, c, "Z")], g[end]))
    clause_pairs = []
    for j in range(1, cnf.m + 1):
        clause_pairs.append(len(main))
        main.append((g[f"C{j}"], g[f"C{j}'"]))
    g.pairs = main + box_pairs
    g.main_pairs = len(main)
    return ReductionOutput(cnf, g.instance(), dict(g.labels), g, variable_pairs, clause_pairs)


def expected_pair_count(cnf: Cnf) -> int:
    """Routing-box pairs and (X, Y) per gadget, n(N+1) row pairs, m clause pairs."""
    big_n = len(cnf.columns())
    return 25 * cnf.n * big_n + cnf.n * (big_n + 1) + cnf.m


# -- witnesses ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _local_solution(entry: Entry, through: bool, drop: Drop) -> dict[str, tuple[str, ...]]:
    """Paths of one isolated crossing gadget, keyed by source name.

    The gadget carries the variable path entering on the *entry* lane, its
    continuation from Z to the matching exit, the X path, the box pairs,
    and the clause path T -> B when *through* is set.
    """
    g = build_crossing_gadget(drop, entry, through)
    exit_ = "H^out" if entry is Entry.PLUS else "L^out"
    out = exact_solve(g.instance([("Z", exit_)]), SearchBudget())
    if out.solution is None:
        raise RuntimeError(f"crossing gadget {entry.value} through={through} drop={drop.value}: {out.status.value}")
    names = g.names
    return {names[p[0]]: tuple(names[v] for v in p) for p in out.solution}


def witness_from_assignment(out: ReductionOutput, beta: Sequence[int]) -> PathSet | None:
    """A verified solution of the reduction instance, or None if beta falsifies the formula."""
    cnf = out.cnf
    if len(beta) != cnf.n:
        raise ValueError(f"assignment has {len(beta)} values for {cnf.n} variables")
    if not cnf.satisfied_by(beta):
        return None
    cols = cnf.columns()
    g = out.gadget
    # the clause path of C_j runs down the column of its first true literal
    chosen = set()
    for j, clause in enumerate(cnf.clauses, 1):
        t = next(t for t, lit in enumerate(clause, 1) if _true(lit, beta))
        chosen.add((j, t))

    by_source: dict[Vertex, Path] = {}

    def local(i: int, j: int, t: int) -> dict[str, tuple[Vertex, ...]]:
        entry = Entry.PLUS if beta[i - 1] else Entry.MINUS
        sol = _local_solution(entry, (j, t) in chosen, drop_for(cnf, i, j, t))
        prefix = gadget_name(i, j, t) + "."
        return {src: tuple(g[prefix + name] for name in p) for src, p in sol.items()}

    pieces = {(i, c): local(i, *cols[c - 1]) for i in range(1, cnf.n + 1) for c in range(1, len(cols) + 1)}
    for i in range(1, cnf.n + 1):
        lane = "H^in" if beta[i - 1] else "L^in"
        row = [pieces[i, c] for c in range(1, len(cols) + 1)]
        by_source[g[f"V{i}"]] = (g[f"V{i}"],) + row[0][lane]
        for c, part in enumerate(row, 1):
            for src, p in part.items():
                if src in ("T", lane):
                    continue
                if src == "Z":
                    p = p + (row[c][lane] if c < len(row) else (g[f"V{i}'"],))
                by_source[p[0]] = p
    for j, t in sorted(chosen):
        c = cols.index((j, t)) + 1
        path: tuple[Vertex, ...] = (g[f"C{j}"],)
        for i in range(1, cnf.n + 1):
            path += pieces[i, c]["T"]
        by_source[path[0]] = path + (g[f"C{j}'"],)

    ps = [by_source[s] for s, _ in out.instance.pairs]
    report = verify_solution(out.instance, ps)
    if not report.ok:
        raise AssertionError(f"assembled witness is not a solution:\n{report}")
    return ps


def assignment_from_solution(out: ReductionOutput, ps: Sequence[Sequence[Vertex]]) -> tuple[int, ...]:
    """Read each variable off the lane its path enters: H means true, L means false."""
    beta = []
    cols = out.cnf.columns()
    j, t = cols[0]
    for i, k in enumerate(out.variable_pairs, 1):
        path = set(ps[k])
        h = out.labels[f"{gadget_name(i, j, t)}.H^in"]
        low = out.labels[f"{gadget_name(i, j, t)}.L^in"]
        if h in path:
            beta.append(1)
        elif low in path:
            beta.append(0)
        else:
            raise ValueError(f"path of V{i} enters neither H^in nor L^in of its first gadget")
    return tuple(beta)


def clause_edge_usage(out: ReductionOutput, ps: Sequence[Sequence[Vertex]], j: int) -> list[tuple[str, Drop]]:
    """The gadgets where the clause path of C_j uses e^+ or e^-."""
    g = out.gadget
    path = ps[out.clause_pairs[j - 1]]
    steps = set(zip(path, path[1:]))
    used = []
    for (jj, t) in out.cnf.columns():
        if jj != j:
            continue
        for i in range(1, out.cnf.n + 1):
            prefix = gadget_name(i, jj, t) + "."
            for which in (Drop.E_PLUS, Drop.E_MINUS):
                if crossing_edge(g, which, prefix) in steps:
                    used.append((gadget_name(i, jj, t), which))
    return used


def dropped_edges(out: ReductionOutput) -> dict[str, Drop]:
    """Which of e^+ / e^- each gadget lacks, read from the drawing itself."""
    g = out.gadget
    edges = out.instance.drawing.edges
    result = {}
    for i in range(1, out.cnf.n + 1):
        for j, t in out.cnf.columns():
            prefix = gadget_name(i, j, t) + "."
            missing = [w for w in (Drop.E_PLUS, Drop.E_MINUS) if crossing_edge(g, w, prefix) not in edges]
            if len(missing) > 1:
                raise AssertionError(f"{prefix} lacks both e^+ and e^-")
            result[gadget_name(i, j, t)] = missing[0] if missing else Drop.NONE
    return result


# -- labels sidecar ----------------------------------------------------------


def serialize_labels(labels: dict[str, Vertex]) -> str:
    return "".join(f"{name} {v}\n" for name, v in sorted(labels.items(), key=lambda kv: kv[1]))


def parse_labels(text: str) -> dict[str, Vertex]:
    labels: dict[str, Vertex] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<name> <id>'")
        name, v = parts[0], int(parts[1])
        if name in labels:
            raise ValueError(f"line {lineno}: label {name} given twice")
        labels[name] = v
    return labels


def recover_cnf(inst: Instance, labels: dict[str, Vertex]) -> Cnf:
    """Reconstruct the formula behind a reduction instance from its labels.

    Gadget names give the column layout; the missing e^+ or e^- edge in
    each column tells which variable the literal is and its sign.
    """
    n = sum(1 for name in labels if name.startswith("V") and not name.endswith("'"))
    cols: dict[int, dict[int, int]] = {}
    edges = inst.drawing.edges
    for name in labels:
        if not name.startswith("G[") or not name.endswith("].m1"):
            continue
        i, j, t = (int(x) for x in name[2 : name.index("]")].split(","))
        prefix = name[: -len("m1")]
        plus = tuple(labels[prefix + x] for x in E_PLUS) in edges
        minus = tuple(labels[prefix + x] for x in E_MINUS) in edges
        if plus and minus:
            continue
        if not plus and not minus:
            raise ValueError(f"{prefix[:-1]} lacks both e^+ and e^-")
        lit = i if plus else -i
        if t in cols.setdefault(j, {}):
            raise ValueError(f"column ({j},{t}) has more than one literal gadget")
        cols[j][t] = lit
    if n == 0 or not cols:
        raise ValueError("labels do not describe a reduction instance")
    clauses = []
    for j in sorted(cols):
        ts = sorted(cols[j])
        if ts != list(range(1, len(ts) + 1)):
            raise ValueError(f"clause {j} has a column without a literal gadget")
        clauses.append(tuple(cols[j][t] for t in ts))
    if sorted(cols) != list(range(1, len(cols) + 1)):
        raise ValueError("clause numbering has gaps")
    return Cnf(n, tuple(clauses))


def output_from_files(inst: Instance, labels: dict[str, Vertex]) -> ReductionOutput:
    """Rebuild the reduction output for a stored instance and check that it matches."""
    out = reduce(recover_cnf(inst, labels))
    if out.instance != inst or out.labels != labels:
        raise ValueError("instance and labels do not match the reduction of the recovered formula")
    return out


def corpus(max_n: int = 3, max_m: int = 3, max_len: int = 3, seed: int = 0, size: int = 60) -> list[Cnf]:
    """A fixed mix of small formulas: hand-picked edge cases plus seeded random ones."""
    rng = random.Random(seed)
    fixed = [
        Cnf(1, ((1,),)),
        Cnf(1, ((-1,),)),
        Cnf(1, ((1,), (-1,))),  # unsatisfiable
        Cnf(1, ((1, -1),)),
        Cnf(1, ((1, 1),)),
        Cnf(2, ((1, 2), (-1, -2))),
        Cnf(2, ((1, 2), (1, -2), (-1, 2))),
        Cnf(2, ((1,), (-1, 2), (-2,))),  # unsatisfiable
        Cnf(3, ((1, 2, 3), (-1, -2, -3), (1, -2, 3))),
        Cnf(3, ((1,), (2,), (-1, -2))),  # unsatisfiable
    ]
    fixed = [c for c in fixed if c.n <= max_n and c.m <= max_m and all(len(cl) <= max_len for cl in c.clauses)]
    seen = {c for c in fixed}
    out = list(fixed)
    while len(out) < size:
        n = rng.randint(1, max_n)
        m = rng.randint(1, max_m)
        clauses = tuple(
            tuple(rng.choice((-1, 1)) * rng.randint(1, n) for _ in range(rng.randint(1, max_len))) for _ in range(m)
        )
        cnf = Cnf(n, clauses)
        if cnf not in seen:
            seen.add(cnf)
            out.append(cnf)
    return out
