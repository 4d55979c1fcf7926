"""Linear-time computation of the right-most s-t path."""

from __future__ import annotations

from typing import Collection, Iterable

from .graph import Drawing, Path, Vertex

_EMPTY: frozenset = frozenset()


def reachable_from(d: Drawing, s: Vertex, blocked: Collection[Vertex] = _EMPTY) -> set[Vertex]:
    """Vertices reachable from *s* by directed paths avoiding *blocked*."""
    if s in blocked:
        return set()
    seen = {s}
    stack = [s]
    out = d.out
    while stack:
        u = stack.pop()
        for v in out[u]:
            if v not in seen and v not in blocked:
                seen.add(v)
                stack.append(v)
    return seen


def reaching(d: Drawing, t: Vertex, within: Collection[Vertex]) -> set[Vertex]:
    """Vertices of *within* that reach *t* inside *within* (reverse search)."""
    if t not in within:
        return set()
    seen = {t}
    stack = [t]
    inn = d.inn
    while stack:
        v = stack.pop()
        for u in inn[v]:
            if u not in seen and u in within:
                seen.add(u)
                stack.append(u)
    return seen


def rightmost_successor(d: Drawing, v: Vertex, allowed: Collection[Vertex]) -> Vertex | None:
    for w in d.out[v]:
        if w in allowed:
            return w
    return None


def rightmost_path(d: Drawing, s: Vertex, t: Vertex, blocked: Collection[Vertex] = _EMPTY) -> Path | None:
    """The right-most s-t path in ``d`` minus *blocked*, or None.

    Forward search from s gives U, a reverse search from t inside U gives
    the vertices that can still finish the path; the walk then always takes
    the right-most successor within that set.
    """
    reach = reachable_from(d, s, blocked)
    if t not in reach:
        return None
    useful = reaching(d, t, reach)
    path = [s]
    v = s
    while v != t:
        v = rightmost_successor(d, v, useful)
        # every vertex of `useful` other than t has a successor in it
        assert v is not None
        path.append(v)
    return tuple(path)


def path_vertices(paths: Iterable[Path]) -> set[Vertex]:
    return {v for p in paths for v in p}
