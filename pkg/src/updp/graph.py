"""Drawings, instances, validation and the line-oriented instance format."""

from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .geometry import Point, Rational, Segment, direction_key, exact, orient, segments_properly_cross

Vertex = int
Path = tuple[Vertex, ...]
PathSet = list[Path]


class Drawing:
    """A digraph together with exact vertex coordinates.

    ``out[v]`` lists the out-neighbours of ``v`` rightmost first, i.e. by
    increasing angle of the edge from the positive x-axis.
    """

    __slots__ = ("coords", "edges", "out", "inn")

    def __init__(self, coords: Mapping[Vertex, Point | tuple], edges: Iterable[tuple[Vertex, Vertex]]):
        self.coords: dict[Vertex, Point] = {
            v: Point(exact(p[0]), exact(p[1])) for v, p in coords.items()
        }
        self.edges: frozenset[tuple[Vertex, Vertex]] = frozenset((u, v) for u, v in edges)
        out: dict[Vertex, list[Vertex]] = {v: [] for v in self.coords}
        inn: dict[Vertex, list[Vertex]] = {v: [] for v in self.coords}
        for u, v in self.edges:
            out.setdefault(u, []).append(v)
            inn.setdefault(v, []).append(u)
        for u, succ in out.items():
            succ.sort(key=lambda v, u=u: self._angle_key(u, v))
        for v, pred in inn.items():
            pred.sort()
        self.out: dict[Vertex, tuple[Vertex, ...]] = {u: tuple(s) for u, s in out.items()}
        self.inn: dict[Vertex, tuple[Vertex, ...]] = {v: tuple(p) for v, p in inn.items()}

    def _angle_key(self, u: Vertex, v: Vertex) -> tuple:
        a, b = self.coords.get(u), self.coords.get(v)
        if a is None or b is None or b.y <= a.y:
            # invalid edge; order is irrelevant, the validator reports it
            return (1, v)
        return (0, direction_key(a, b))

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Drawing):
            return NotImplemented
        return self.coords == other.coords and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((frozenset(self.coords.items()), self.edges))

    def __repr__(self) -> str:
        return f"Drawing(n={len(self.coords)}, m={len(self.edges)})"

    def segment(self, u: Vertex, v: Vertex) -> Segment:
        return Segment(self.coords[u], self.coords[v])

    def polyline(self, path: Sequence[Vertex]) -> list[Point]:
        return [self.coords[v] for v in path]

    def without_edges(self, dropped: Iterable[tuple[Vertex, Vertex]]) -> Drawing:
        dropped = set(dropped)
        return Drawing(self.coords, (e for e in self.edges if e not in dropped))

    def induced(self, keep: Iterable[Vertex]) -> Drawing:
        keep = set(keep)
        return Drawing(
            {v: p for v, p in self.coords.items() if v in keep},
            ((u, v) for u, v in self.edges if u in keep and v in keep),
        )


@dataclass(frozen=True)
class Instance:
    drawing: Drawing
    pairs: tuple[tuple[Vertex, Vertex], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((s, t) for s, t in self.pairs))

    @property
    def k(self) -> int:
        return len(self.pairs)

    def with_pairs(self, pairs: Iterable[tuple[Vertex, Vertex]]) -> Instance:
        return Instance(self.drawing, tuple(pairs))


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    items: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, detail: str, *items) -> None:
        self.violations.append(Violation(kind, detail, tuple(items)))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


def _crossing_pairs(d: Drawing, edges: list[tuple[Vertex, Vertex]]) -> Iterable[tuple]:
    """Yield every pair of edges whose segments properly cross.

    Candidates come from a sweep over y-intervals with an x-bounding-box
    filter; every candidate is decided by the exact predicate.
    """
    items = []
    for e in edges:
        a, b = d.coords[e[0]], d.coords[e[1]]
        items.append((min(a.y, b.y), max(a.y, b.y), min(a.x, b.x), max(a.x, b.x), e, Segment(a, b)))
    items.sort(key=lambda it: it[0])
    active: list = []
    for ylo, yhi, xlo, xhi, e, seg in items:
        active = [it for it in active if it[1] >= ylo]
        for oylo, oyhi, oxlo, oxhi, oe, oseg in active:
            if oxhi < xlo or xhi < oxlo:
                continue
            if segments_properly_cross(seg, oseg):
                yield (oe, e) if oe < e else (e, oe)
        active.append((ylo, yhi, xlo, xhi, e, seg))


def _vertices_on_edges(d: Drawing, edges: list[tuple[Vertex, Vertex]]) -> Iterable[tuple]:
    by_y = sorted((p.y, v) for v, p in d.coords.items())
    ys = [y for y, _ in by_y]
    for u, w in edges:
        a, b = d.coords[u], d.coords[w]
        lo, hi = min(a.y, b.y), max(a.y, b.y)
        xlo, xhi = min(a.x, b.x), max(a.x, b.x)
        for i in range(bisect.bisect_left(ys, lo), bisect.bisect_right(ys, hi)):
            v = by_y[i][1]
            if v in (u, w):
                continue
            p = d.coords[v]
            if xlo <= p.x <= xhi and orient(a, b, p) == 0:
                yield v, (u, w)


def topological_order(d: Drawing) -> list[Vertex] | None:
    """Kahn's algorithm; None when the digraph has a cycle."""
    indeg = {v: 0 for v in d.coords}
    for _, v in d.edges:
        if v in indeg:
            indeg[v] += 1
    queue = deque(sorted(v for v, n in indeg.items() if n == 0))
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in d.out.get(u, ()):
            if v not in indeg:
                continue
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == len(indeg) else None


def validate_drawing(d: Drawing) -> Report:
    """Check that *d* is a straight-line upward planar drawing."""
    report = Report()
    seen: dict[Point, Vertex] = {}
    for v in sorted(d.coords):
        p = d.coords[v]
        if p in seen:
            report.add("coincident_vertices", f"vertices {seen[p]} and {v} share position {p.x},{p.y}", seen[p], v)
        else:
            seen[p] = v

    good_edges = []
    for u, v in sorted(d.edges):
        if u not in d.coords or v not in d.coords:
            missing = [w for w in (u, v) if w not in d.coords]
            report.add("unknown_vertex", f"edge {u}->{v} references undeclared vertex {missing}", u, v)
            continue
        if u == v:
            report.add("self_loop", f"edge {u}->{v} is a loop", u, v)
            continue
        if d.coords[v].y <= d.coords[u].y:
            report.add("non_upward_edge", f"edge {u}->{v} does not point strictly upward", u, v)
        good_edges.append((u, v))

    if "coincident_vertices" not in report.kinds():
        for e1, e2 in _crossing_pairs(d, good_edges):
            report.add("crossing_edges", f"edges {e1[0]}->{e1[1]} and {e2[0]}->{e2[1]} cross", e1, e2)
        for v, e in _vertices_on_edges(d, good_edges):
            report.add("vertex_on_edge", f"vertex {v} lies on edge {e[0]}->{e[1]}", v, e)

    if topological_order(Drawing(d.coords, good_edges)) is None:
        report.add("cycle", "the digraph contains a directed cycle")
    return report


def validate_instance(inst: Instance) -> Report:
    """Terminals must exist, k >= 1, and all 2k terminals be pairwise distinct."""
    report = Report()
    if not inst.pairs:
        report.add("no_pairs", "instance has no terminal pairs")
    owner: dict[Vertex, int] = {}
    for i, (s, t) in enumerate(inst.pairs):
        for v in (s, t):
            if v not in inst.drawing.coords:
                report.add("unknown_terminal", f"pair {i} references undeclared vertex {v}", i, v)
        if s == t:
            report.add("coincident_terminals", f"pair {i} has s = t = {s}", i, s)
            continue
        for v in (s, t):
            if v in owner:
                report.add("duplicated_terminal", f"vertex {v} is a terminal of pairs {owner[v]} and {i}", owner[v], i, v)
            else:
                owner[v] = i
    return report


# --------------------------------------------------------------------------
# instance text format
# --------------------------------------------------------------------------


class InstanceSyntaxError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _parse_rational(tok: str, lineno: int) -> Rational:
    try:
        if "/" in tok:
            num, den = tok.split("/")
            return exact(Fraction(int(num), int(den)))
        return int(tok)
    except (ValueError, ZeroDivisionError):
        raise InstanceSyntaxError(lineno, f"bad coordinate {tok!r}") from None


def _parse_id(tok: str, lineno: int) -> Vertex:
    try:
        v = int(tok)
    except ValueError:
        raise InstanceSyntaxError(lineno, f"bad vertex id {tok!r}") from None
    if v < 0:
        raise InstanceSyntaxError(lineno, f"negative vertex id {v}")
    return v


def parse_instance(text: str) -> Instance:
    coords: dict[Vertex, Point] = {}
    edges: list[tuple[tuple[Vertex, Vertex], int]] = []
    pairs: list[tuple[tuple[Vertex, Vertex], int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "v":
            if len(rest) != 3:
                raise InstanceSyntaxError(lineno, "expected 'v <id> <x> <y>'")
            v = _parse_id(rest[0], lineno)
            if v in coords:
                raise InstanceSyntaxError(lineno, f"vertex {v} declared twice")
            coords[v] = Point(_parse_rational(rest[1], lineno), _parse_rational(rest[2], lineno))
        elif tag in ("e", "p"):
            if len(rest) != 2:
                raise InstanceSyntaxError(lineno, f"expected '{tag} <u> <v>'")
            item = (_parse_id(rest[0], lineno), _parse_id(rest[1], lineno))
            (edges if tag == "e" else pairs).append((item, lineno))
        else:
            raise InstanceSyntaxError(lineno, f"unknown record type {tag!r}")

    seen_edges = set()
    for (u, v), lineno in edges + pairs:
        for w in (u, v):
            if w not in coords:
                raise InstanceSyntaxError(lineno, f"undeclared vertex {w}")
    for e, lineno in edges:
        if e in seen_edges:
            raise InstanceSyntaxError(lineno, f"duplicate edge {e[0]} {e[1]}")
        seen_edges.add(e)
    return Instance(Drawing(coords, seen_edges), tuple(p for p, _ in pairs))


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize_instance(inst: Instance) -> str:
    """Vertices and edges sorted ascending; pairs keep their index order."""
    d = inst.drawing
    lines = [f"v {v} {format_rational(d.coords[v].x)} {format_rational(d.coords[v].y)}" for v in sorted(d.coords)]
    lines += [f"e {u} {v}" for u, v in sorted(d.edges)]
    lines += [f"p {s} {t}" for s, t in inst.pairs]
    return "\n".join(lines) + "\n"
