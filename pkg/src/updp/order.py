"""The "to the right of" relation between disjoint paths and its closure."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geometry import Point, Rational, Side, horizontal_crossings, point_side
from .graph import Drawing, Path


class OrderCycleError(ValueError):
    """Raised when the relation has a cycle; ``cycle`` lists path indices."""

    def __init__(self, cycle: list[int]):
        super().__init__("precedence relation has a cycle: " + " < ".join(map(str, cycle)))
        self.cycle = cycle


def critical_heights(a: Sequence[Point], b: Sequence[Point]) -> list[Rational]:
    """Vertex heights of both polylines inside their common y-range, plus midpoints."""
    lo = max(a[0].y, b[0].y)
    hi = min(a[-1].y, b[-1].y)
    if lo > hi:
        return []
    ys = sorted({p.y for p in a if lo <= p.y <= hi} | {p.y for p in b if lo <= p.y <= hi} | {lo, hi})
    mids = [Fraction(y0 + y1, 2) for y0, y1 in zip(ys, ys[1:])]
    return ys + mids


def polyline_precedes(q: Sequence[Point], p: Sequence[Point]) -> bool:
    """True iff some point of polyline *p* lies strictly right of polyline *q*."""
    for y in critical_heights(q, p):
        (xp,) = horizontal_crossings(p, y)
        if point_side(Point(xp, y), q) is Side.RIGHT:
            return True
    return False


def precedes(q: Path, p: Path, d: Drawing) -> bool:
    """``q < p``: path *p* has a point in the region right of path *q*."""
    return polyline_precedes(d.polyline(q), d.polyline(p))


def precedence_relation(ps: Sequence[Path], d: Drawing) -> set[tuple[int, int]]:
    lines = [d.polyline(p) for p in ps]
    return {
        (i, j)
        for i in range(len(ps))
        for j in range(len(ps))
        if i != j and polyline_precedes(lines[i], lines[j])
    }


def _find_cycle(n: int, rel: set[tuple[int, int]]) -> list[int] | None:
    succ: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in sorted(rel):
        succ[i].append(j)
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if color[v] == 0:
                    color[v] = 1
                    parent[v] = u
                    stack.append((v, iter(succ[v])))
                    break
                if color[v] == 1:
                    cycle = [u]
                    while cycle[-1] != v:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    return cycle + [v]
            else:
                color[u] = 2
                stack.pop()
    return None


def transitive_closure(n: int, rel: set[tuple[int, int]]) -> set[tuple[int, int]]:
    reach = [set() for _ in range(n)]
    for i, j in rel:
        reach[i].add(j)
    for m in range(n):
        for i in range(n):
            if m in reach[i]:
                reach[i] |= reach[m]
    return {(i, j) for i in range(n) for j in reach[i]}


def order_closure(ps: Sequence[Path], d: Drawing) -> set[tuple[int, int]]:
    """Transitive closure of ``precedes`` over *ps* as a set of index pairs.

    Raises :class:`OrderCycleError` if the relation is cyclic, which for
    pairwise disjoint paths in a valid drawing can only mean a bug or an
    invalid input.
    """
    rel = precedence_relation(ps, d)
    cycle = _find_cycle(len(ps), rel)
    if cycle is not None:
        raise OrderCycleError(cycle)
    return transitive_closure(len(ps), rel)


def maximal_elements(ps: Sequence[Path], d: Drawing, closure: set[tuple[int, int]] | None = None) -> set[int]:
    if closure is None:
        closure = order_closure(ps, d)
    has_successor = {i for i, _ in closure}
    return set(range(len(ps))) - has_successor


def hasse_edges(n: int, closure: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Transitive reduction of an acyclic closure."""
    return {
        (i, j)
        for i, j in closure
        if not any((i, m) in closure and (m, j) in closure for m in range(n))
    }


def hasse_dot(ps: Sequence[Path], d: Drawing, name: str = "order") -> str:
    closure = order_closure(ps, d)
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i, p in enumerate(ps):
        label = " ".join(map(str, p))
        lines.append(f'  p{i} [label="P{i}: {label}"];')
    for i, j in sorted(hasse_edges(len(ps), closure)):
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
