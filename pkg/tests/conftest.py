from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from updp.generate import random_drawing, random_instance
from updp.graph import Drawing, Instance


def make(coords, edges, pairs=()) -> Instance:
    """Instance from a ``{v: (x, y)}`` map, an edge list and a pair list."""
    return Instance(Drawing(coords, edges), tuple(pairs))


@st.composite
def drawings(draw, min_n: int = 1, max_n: int = 7):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    density = draw(st.sampled_from([0.3, 0.5, 0.8, 1.0]))
    return random_drawing(random.Random(seed), n, density)


@st.composite
def instances(draw, max_n: int = 7, max_k: int = 3):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_k, n // 2)))
    density = draw(st.sampled_from([0.4, 0.7, 1.0]))
    return random_instance(random.Random(seed), n, k, density)


@pytest.fixture
def diamond() -> Instance:
    # 0 at the bottom, 3 at the top, 1 to the left and 2 to the right
    return make({0: (0, 0), 1: (-1, 1), 2: (1, 1), 3: (0, 2)}, [(0, 1), (0, 2), (1, 3), (2, 3)], [(0, 3)])


def random_disjoint_paths(rng: random.Random, d: Drawing, count: int) -> list[tuple[int, ...]]:
    """Up to *count* vertex-disjoint upward paths grown by random walks."""
    used: set = set()
    paths = []
    for _ in range(count):
        free = [v for v in d.coords if v not in used]
        if not free:
            break
        v = rng.choice(free)
        path = [v]
        while True:
            nxt = [w for w in d.out[v] if w not in used and w not in path]
            if not nxt or rng.random() < 0.2:
                break
            v = rng.choice(nxt)
            path.append(v)
        used.update(path)
        paths.append(tuple(path))
    return paths
