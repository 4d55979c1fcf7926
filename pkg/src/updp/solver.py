"""Permutation-based decision procedure for disjoint paths in upward drawings.

For every order of the terminal pairs, each pair is linked by the right-most
path in what remains of the drawing after deleting the paths routed before
it. If some disjoint solution exists, one of the k! orders finds one.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Instance, Path, PathSet, Report
from .rightmost import reachable_from, rightmost_path

DEFAULT_MAX_K = 10


class Status(enum.Enum):
    SOLVED = "SOLVED"
    NO_SOLUTION = "NO_SOLUTION"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class Stats:
    permutations: int = 0
    rightmost_calls: int = 0
    nodes: int = 0


@dataclass
class SolveOutcome:
    status: Status
    solution: PathSet | None = None
    permutation: tuple[int, ...] | None = None
    stats: Stats = field(default_factory=Stats)

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED


class TooManyPairs(ValueError):
    pass


def route_in_order(inst: Instance, order: Sequence[int], stats: Stats | None = None) -> PathSet | None:
    """Route the pairs in *order*, each by the right-most path avoiding earlier ones.

    Returns the paths indexed like ``inst.pairs``, or None at the first pair
    that cannot be linked.
    """
    d = inst.drawing
    blocked: set = set()
    paths: dict[int, Path] = {}
    for i in order:
        s, t = inst.pairs[i]
        if stats is not None:
            stats.rightmost_calls += 1
        p = rightmost_path(d, s, t, blocked)
        if p is None:
            return None
        paths[i] = p
        blocked.update(p)
    return [paths[i] for i in range(len(inst.pairs))]


def _all_pairs_reachable(inst: Instance) -> bool:
    d = inst.drawing
    return all(t in reachable_from(d, s) for s, t in inst.pairs)


def _check_k(inst: Instance, max_k: int, force: bool) -> None:
    if inst.k > max_k and not force:
        raise TooManyPairs(f"k={inst.k} exceeds the limit of {max_k} (k! orders); pass force=True to override")


def _route_prefix_tree(inst: Instance, stats: Stats) -> tuple[PathSet, tuple[int, ...]] | None:
    """Lexicographic permutation search sharing routed prefixes.

    Every order with a prefix that already failed fails at the same pair,
    so whole subtrees are skipped. Results equal the plain enumeration.
    """
    d = inst.drawing
    k = inst.k

    def extend(prefix: list[int], blocked: set, paths: dict[int, Path]):
        if len(prefix) == k:
            stats.permutations += 1
            return [paths[i] for i in range(k)], tuple(prefix)
        for i in range(k):
            if i in paths:
                continue
            s, t = inst.pairs[i]
            stats.rightmost_calls += 1
            p = rightmost_path(d, s, t, blocked)
            if p is None:
                # the number of full orders this subtree stood for
                stats.permutations += math.factorial(k - len(prefix) - 1)
                continue
            paths[i] = p
            prefix.append(i)
            found = extend(prefix, blocked | set(p), paths)
            if found is not None:
                return found
            prefix.pop()
            del paths[i]
        return None

    return extend([], set(), {})


def _try_ranks(inst: Instance, start: int, count: int) -> tuple[int, tuple[int, ...] | None, PathSet | None, int]:
    """Try the orders with lexicographic rank in [start, start + count)."""
    stats = Stats()
    orders = itertools.islice(itertools.permutations(range(inst.k)), start, start + count)
    for n, order in enumerate(orders):
        ps = route_in_order(inst, order, stats)
        if ps is not None:
            return start + n, order, ps, stats.rightmost_calls
    return -1, None, None, stats.rightmost_calls


def solve(
    inst: Instance,
    *,
    max_k: int = DEFAULT_MAX_K,
    force: bool = False,
    parallel: bool = False,
    workers: int | None = None,
    chunk: int = 2048,
    share_prefixes: bool = False,
) -> SolveOutcome:
    """Decide the instance by trying all k! routing orders.

    ``share_prefixes`` is an experimental speed-up that walks the
    permutation tree instead of re-routing shared prefixes; the reported
    permutation and solution are the same as in the reference mode.
    """
    _check_k(inst, max_k, force)
    stats = Stats()
    if not _all_pairs_reachable(inst):
        return SolveOutcome(Status.NO_SOLUTION, stats=stats)

    if share_prefixes:
        found = _route_prefix_tree(inst, stats)
        if found is None:
            return SolveOutcome(Status.NO_SOLUTION, stats=stats)
        return SolveOutcome(Status.SOLVED, found[0], found[1], stats)

    if parallel and inst.k > 1:
        return _solve_parallel(inst, stats, workers, chunk)

    for order in itertools.permutations(range(inst.k)):
        stats.permutations += 1
        ps = route_in_order(inst, order, stats)
        if ps is not None:
            return SolveOutcome(Status.SOLVED, ps, order, stats)
    return SolveOutcome(Status.NO_SOLUTION, stats=stats)


def _solve_parallel(inst: Instance, stats: Stats, workers: int | None, chunk: int) -> SolveOutcome:
    total = math.factorial(inst.k)
    starts = list(range(0, total, chunk))
    workers = workers or min(len(starts), os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, so the first success seen is the
        # lexicographically first one; later speculative results are dropped
        results = pool.map(_try_ranks, itertools.repeat(inst), starts, itertools.repeat(chunk))
        for rank, order, ps, calls in results:
            stats.rightmost_calls += calls
            if ps is not None:
                stats.permutations = rank + 1
                pool.shutdown(wait=False, cancel_futures=True)
                return SolveOutcome(Status.SOLVED, ps, order, stats)
    stats.permutations = total
    return SolveOutcome(Status.NO_SOLUTION, stats=stats)


def verify_solution(inst: Instance, ps: Sequence[Sequence[int]]) -> Report:
    """Check that *ps* links every pair by pairwise vertex-disjoint paths."""
    report = Report()
    d = inst.drawing
    if len(ps) != inst.k:
        report.add("count", f"expected {inst.k} paths, got {len(ps)}")
    owner: dict[int, int] = {}
    for i, (path, (s, t)) in enumerate(zip(ps, inst.pairs)):
        if not path:
            report.add("empty_path", f"path {i} is empty", i)
            continue
        if path[0] != s or path[-1] != t:
            report.add("endpoints", f"path {i} runs {path[0]}..{path[-1]}, expected {s}..{t}", i)
        for u, v in zip(path, path[1:]):
            if (u, v) not in d.edges:
                report.add("connectivity", f"path {i} uses non-edge {u}->{v}", i, u, v)
        for v in path:
            if v not in d.coords:
                report.add("unknown_vertex", f"path {i} visits undeclared vertex {v}", i, v)
            if v in owner:
                if owner[v] == i:
                    report.add("repeated_vertex", f"path {i} visits {v} twice", i, v)
                else:
                    report.add("disjointness", f"paths {owner[v]} and {i} share vertex {v}", owner[v], i, v)
            else:
                owner[v] = i
    return report
