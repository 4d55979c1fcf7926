"""Random and exhaustive generators of small upward drawings and instances."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .geometry import Point, Segment, on_segment, segments_properly_cross
from .graph import Drawing, Instance, Vertex
from .rightmost import reachable_from

# point sets for the exhaustive sweep: one in convex position, one with an
# interior point, one with a shared height (so some pairs cannot be joined)
FIXED_POINT_SETS: dict[int, list[list[tuple[int, int]]]] = {
    1: [[(0, 0)]],
    2: [[(0, 0), (1, 2)], [(0, 0), (2, 0)]],
    3: [[(0, 0), (2, 1), (1, 3)], [(0, 0), (-2, 1), (1, 3)]],
    4: [[(0, 0), (3, 1), (-3, 2), (0, 4)], [(0, 0), (1, 2), (-2, 3), (2, 4)], [(0, 0), (2, 0), (1, 2), (3, 3)]],
    5: [
        [(0, 0), (3, 1), (-3, 2), (2, 4), (-1, 5)],
        [(0, 0), (4, 2), (1, 3), (-3, 4), (0, 6)],
        [(0, 0), (2, 2), (-2, 2), (1, 4), (-1, 5)],
    ],
}


def _compatible(coords: Sequence[Point], edges: Sequence[tuple[Vertex, Vertex]], u: Vertex, v: Vertex) -> bool:
    seg = Segment(coords[u], coords[v])
    for w, p in enumerate(coords):
        if w not in (u, v) and on_segment(p, seg.a, seg.b):
            return False
    return not any(segments_properly_cross(seg, Segment(coords[a], coords[b])) for a, b in edges)


def upward_candidates(coords: Sequence[Point]) -> list[tuple[Vertex, Vertex]]:
    return [(u, v) for u, v in itertools.permutations(range(len(coords)), 2) if coords[u].y < coords[v].y]


def random_drawing(rng: random.Random, n: int, density: float = 0.5, span: int | None = None) -> Drawing:
    """A straight-line upward planar drawing on *n* random integer points.

    Candidate upward edges are visited in random order and kept with
    probability *density* when they cross nothing already kept.
    """
    span = span or 3 * n
    pts: set[Point] = set()
    while len(pts) < n:
        pts.add(Point(rng.randint(0, span), rng.randint(0, span)))
    coords = sorted(pts, key=lambda p: (p.y, p.x))
    rng.shuffle(coords)
    cands = upward_candidates(coords)
    rng.shuffle(cands)
    edges: list[tuple[Vertex, Vertex]] = []
    for u, v in cands:
        if rng.random() < density and _compatible(coords, edges, u, v):
            edges.append((u, v))
    return Drawing(dict(enumerate(coords)), edges)


def random_pairs(rng: random.Random, d: Drawing, k: int, linked_bias: float = 0.7) -> list[tuple[Vertex, Vertex]] | None:
    """*k* pairs on distinct terminals, mostly with t reachable from s."""
    free = list(d.coords)
    rng.shuffle(free)
    pairs = []
    for _ in range(k):
        if len(free) < 2:
            return None
        s = free.pop()
        reach = [t for t in reachable_from(d, s) if t != s and t in free]
        if reach and rng.random() < linked_bias:
            t = rng.choice(reach)
        else:
            t = rng.choice(free)
        free.remove(t)
        pairs.append((s, t))
    return pairs


def random_instance(rng: random.Random, n: int, k: int, density: float = 0.5) -> Instance:
    if 2 * k > n:
        raise ValueError(f"{k} pairs need at least {2 * k} vertices, got {n}")
    while True:
        d = random_drawing(rng, n, density)
        pairs = random_pairs(rng, d, k)
        if pairs is not None:
            return Instance(d, tuple(pairs))


def exhaustive_drawings(points: Sequence[tuple[int, int]]) -> Iterator[Drawing]:
    """Every upward planar straight-line edge set on the given points."""
    coords = [Point(x, y) for x, y in points]
    cands = [e for e in upward_candidates(coords) if _compatible(coords, [], *e)]

    def extend(i: int, chosen: list) -> Iterator[list]:
        if i == len(cands):
            yield list(chosen)
            return
        yield from extend(i + 1, chosen)
        if _compatible(coords, chosen, *cands[i]):
            chosen.append(cands[i])
            yield from extend(i + 1, chosen)
            chosen.pop()

    for edges in extend(0, []):
        yield Drawing(dict(enumerate(coords)), edges)


def all_pair_sets(d: Drawing, max_k: int) -> Iterator[tuple[tuple[Vertex, Vertex], ...]]:
    """All sets of up to *max_k* pairs with distinct terminals, each source strictly below its target."""
    cands = [(s, t) for s, t in upward_candidates([d.coords[v] for v in sorted(d.coords)])]
    for k in range(1, max_k + 1):
        for combo in itertools.combinations(cands, k):
            terms = [v for pair in combo for v in pair]
            if len(set(terms)) == len(terms):
                yield combo


def lattice_drawing(rows: int, cols: int, rng: random.Random | None = None, keep: float = 1.0) -> Drawing:
    """Triangular lattice: (c, r) -> (c, r+1) and (c, r) -> (c+1, r+1).

    Planar by construction; with *rng* each edge is kept with probability *keep*.
    """
    coords = {r * cols + c: Point(c, r) for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows - 1):
        for c in range(cols):
            v = r * cols + c
            for w in (v + cols, v + cols + 1 if c + 1 < cols else None):
                if w is not None and (rng is None or rng.random() < keep):
                    edges.append((v, w))
    return Drawing(coords, edges)


def crossing_demand(k: int, side: int = 14) -> Instance:
    """k pairs on a side x side lattice whose targets come in reverse source order.

    Source i sits at column i of the bottom row, its target at column
    2(k-1) - i of the top row. Each target is reachable from its source,
    but disjoint paths in a planar drawing cannot swap places, so for
    k >= 2 every pair order fails and the solver tries all k! of them.
    """
    if not 1 <= k <= (side + 1) // 2:
        raise ValueError(f"k={k} does not fit a lattice of side {side}")
    d = lattice_drawing(side, side)
    top = (side - 1) * side
    return Instance(d, tuple((i, top + 2 * (k - 1) - i) for i in range(k)))
