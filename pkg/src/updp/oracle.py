"""Exact exponential-time reference procedures.

These are deliberately simple and only meant for small instances and for
the gadgets, where near-forced routings keep the pruned search short.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterator, Mapping, Sequence

from .geometry import Point, horizontal_crossings
from .graph import Drawing, Instance, Path, PathSet, Vertex
from .order import critical_heights
from .rightmost import reachable_from, reaching
from .solver import SolveOutcome, Stats, Status

DEFAULT_MAX_NODES = 10**7


@dataclass
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    used: int = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.max_nodes:
            raise BudgetExceeded(self.used)


class BudgetExceeded(RuntimeError):
    pass


class UniquenessError(AssertionError):
    """The right-most path by definition was not unique."""


def enumerate_st_paths(
    d: Drawing,
    s: Vertex,
    t: Vertex,
    limit: int | None = None,
    blocked: Collection[Vertex] = frozenset(),
) -> tuple[list[Path], bool]:
    """All simple s-t paths in DFS order; returns ``(paths, truncated)``."""
    if s in blocked or t in blocked:
        return [], False
    useful = reaching(d, t, reachable_from(d, s, blocked))
    if s not in useful:
        return [], False
    paths: list[Path] = []
    stack: list[tuple[Vertex, ...]] = [(s,)]
    while stack:
        path = stack.pop()
        v = path[-1]
        if v == t:
            paths.append(path)
            if limit is not None and len(paths) >= limit:
                return paths, bool(stack)
            continue
        # push in reverse so the right-most successor is explored first
        for w in reversed(d.out[v]):
            if w in useful:
                stack.append(path + (w,))
    return paths, False


def lies_within_right_closure(p: Sequence[Point], q: Sequence[Point]) -> bool:
    """True iff every point of polyline *p* is on *q* or strictly right of it.

    Both polylines must span the same y-range (two s-t paths do).
    """
    for y in critical_heights(p, q):
        (xp,) = horizontal_crossings(p, y)
        (xq,) = horizontal_crossings(q, y)
        if xp < xq:
            return False
    return True


def rightmost_by_definition(d: Drawing, s: Vertex, t: Vertex, limit: int = 200_000) -> Path | None:
    """The s-t path contained in ``P' + Right(P')`` for every s-t path P'."""
    paths, truncated = enumerate_st_paths(d, s, t, limit)
    if truncated:
        raise ValueError(f"more than {limit} s-t paths; enumeration infeasible")
    if not paths:
        return None
    lines = [d.polyline(p) for p in paths]
    qualifying = [
        p for p, lp in zip(paths, lines) if all(lies_within_right_closure(lp, lq) for lq in lines)
    ]
    if len(qualifying) != 1:
        raise UniquenessError(f"{len(qualifying)} paths qualify as right-most from {s} to {t}")
    return qualifying[0]


class _Search:
    """Backtracking over pairs in the given order with reachability pruning."""

    def __init__(self, inst: Instance, budget: SearchBudget):
        self.d = inst.drawing
        self.pairs = inst.pairs
        self.budget = budget
        self.terminals = {v for pair in inst.pairs for v in pair}
        self._region: dict[tuple[int, ...], frozenset] = {}
        self._memo: dict[tuple, dict[int, Path] | None] = {}

    def region(self, group: tuple[int, ...]) -> frozenset:
        """Vertices any path of the group could use, ignoring other paths."""
        if group not in self._region:
            area: set = set()
            for j in group:
                s, t = self.pairs[j]
                area |= reaching(self.d, t, reachable_from(self.d, s))
            self._region[group] = frozenset(area)
        return self._region[group]

    def _allowed(self, i: int, used: set) -> set:
        s, t = self.pairs[i]
        # other pairs' terminals are off limits for full disjointness
        return {v for v in self.d.coords if v not in used and (v not in self.terminals or v in (s, t))}

    def feasible(self, start: int, used: set) -> bool:
        for j in range(start, len(self.pairs)):
            s, t = self.pairs[j]
            if s in used or t in used:
                return False
            allowed = self._allowed(j, used)
            if t not in reachable_from(self.d, s, _Complement(allowed)):
                return False
        return True

    def paths(self, i: int, used: set) -> Iterator[Path]:
        s, t = self.pairs[i]
        allowed = self._allowed(i, used)
        useful = reaching(self.d, t, allowed)
        if s not in useful:
            return
        out = self.d.out
        stack: list[tuple[Vertex, ...]] = [(s,)]
        while stack:
            path = stack.pop()
            self.budget.spend()
            v = path[-1]
            if v == t:
                yield path
                continue
            for w in reversed(out[v]):
                if w in useful:
                    stack.append(path + (w,))

    def solutions(self, i: int, used: set) -> Iterator[list[Path]]:
        if i == len(self.pairs):
            yield []
            return
        for p in self.paths(i, used):
            nxt = used | set(p)
            if not self.feasible(i + 1, nxt):
                continue
            for rest in self.solutions(i + 1, nxt):
                yield [p] + rest

    def _useful(self, j: int, used: set) -> set:
        s, t = self.pairs[j]
        allowed = self._allowed(j, used)
        return reaching(self.d, t, reachable_from(self.d, s, _Complement(allowed)))

    def first(self, indices: Sequence[int], used: set) -> dict[int, Path] | None:
        """One solution for the pairs in *indices*, or None.

        Pairs whose candidate vertex sets do not overlap cannot interact, so
        each such group is solved on its own; this keeps independent
        sub-problems from multiplying each other's backtracking.
        """
        if not indices:
            return {}
        useful = {j: self._useful(j, used) for j in indices}
        if any(self.pairs[j][0] not in useful[j] for j in indices):
            return None
        groups = _overlap_groups(indices, useful)
        if len(groups) > 1:
            found: dict[int, Path] = {}
            # small groups first: they are cheap and fail early
            for group in sorted(groups, key=len):
                part = self._first_group(tuple(group), used)
                if part is None:
                    return None
                found.update(part)
            return found
        return self._first_group(tuple(indices), used)

    def _first_group(self, group: tuple[int, ...], used: set) -> dict[int, Path] | None:
        # only the used vertices inside the group's region affect its answer
        key = (group, self.region(group) & frozenset(used))
        if key in self._memo:
            part = self._memo[key]
            return None if part is None else dict(part)
        result = self._search_group(group, used)
        self._memo[key] = None if result is None else dict(result)
        return result

    def _search_group(self, group: tuple[int, ...], used: set) -> dict[int, Path] | None:
        i, rest = group[0], list(group[1:])
        for p in self.paths(i, used):
            part = self.first(rest, used | set(p))
            if part is not None:
                part[i] = p
                return part
        return None


def _overlap_groups(indices: Sequence[int], useful: dict[int, set]) -> list[list[int]]:
    parent = {j: j for j in indices}

    def find(j: int) -> int:
        while parent[j] != j:
            parent[j] = parent[parent[j]]
            j = parent[j]
        return j

    owner: dict[Vertex, int] = {}
    for j in indices:
        for v in useful[j]:
            if v in owner:
                parent[find(j)] = find(owner[v])
            else:
                owner[v] = j
    groups: dict[int, list[int]] = {}
    for j in indices:
        groups.setdefault(find(j), []).append(j)
    return list(groups.values())


class _Complement:
    """Membership test for 'not in allowed', used as a blocked set."""

    __slots__ = ("allowed",)

    def __init__(self, allowed: set):
        self.allowed = allowed

    def __contains__(self, v) -> bool:
        return v not in self.allowed


def exact_solve(inst: Instance, budget: SearchBudget | None = None) -> SolveOutcome:
    """Exact decision by backtracking; BUDGET_EXCEEDED is never a NO."""
    budget = budget or SearchBudget()
    search = _Search(inst, budget)
    stats = Stats()
    try:
        if not search.feasible(0, set()):
            return SolveOutcome(Status.NO_SOLUTION, stats=Stats(nodes=budget.used))
        found = search.first(list(range(len(inst.pairs))), set())
        sol = None if found is None else [found[i] for i in range(len(inst.pairs))]
    except BudgetExceeded:
        stats.nodes = budget.used
        return SolveOutcome(Status.BUDGET_EXCEEDED, stats=stats)
    stats.nodes = budget.used
    if sol is None:
        return SolveOutcome(Status.NO_SOLUTION, stats=stats)
    return SolveOutcome(Status.SOLVED, sol, stats=stats)


def complete(inst: Instance, fixed: Mapping[int, Path], budget: SearchBudget | None = None) -> SolveOutcome:
    """Extend the paths in *fixed* (keyed by pair index) to a full solution.

    The fixed paths must link their pairs, be pairwise disjoint and avoid
    the other pairs' terminals; otherwise ValueError is raised.
    """
    budget = budget or SearchBudget()
    search = _Search(inst, budget)
    used: set = set()
    for i, p in fixed.items():
        if p[0] != inst.pairs[i][0] or p[-1] != inst.pairs[i][1]:
            raise ValueError(f"fixed path {i} does not link its pair")
        if any((u, v) not in inst.drawing.edges for u, v in zip(p, p[1:])):
            raise ValueError(f"fixed path {i} is not a path of the drawing")
        if used & set(p) or (set(p) & search.terminals) - set(inst.pairs[i]):
            raise ValueError(f"fixed path {i} meets another path or terminal")
        used |= set(p)
    rest = [i for i in range(len(inst.pairs)) if i not in fixed]
    try:
        found = search.first(rest, used)
    except BudgetExceeded:
        return SolveOutcome(Status.BUDGET_EXCEEDED, stats=Stats(nodes=budget.used))
    if found is None:
        return SolveOutcome(Status.NO_SOLUTION, stats=Stats(nodes=budget.used))
    found.update(fixed)
    sol = [found[i] for i in range(len(inst.pairs))]
    return SolveOutcome(Status.SOLVED, sol, stats=Stats(nodes=budget.used))


@dataclass
class CountResult:
    count: int
    solutions: list[PathSet]
    complete: bool
    nodes: int

    @property
    def exceeded(self) -> bool:
        return not self.complete


def count_solutions(
    inst: Instance,
    cap: int = 2,
    distinct_on: int | None = None,
    budget: SearchBudget | None = None,
) -> CountResult:
    """Count solutions up to *cap*.

    With ``distinct_on=j`` two solutions are the same when their first *j*
    paths agree; each distinct prefix counts once if some completion exists.
    ``complete`` is False if the budget ran out before the count was settled.
    """
    budget = budget or SearchBudget()
    search = _Search(inst, budget)
    j = len(inst.pairs) if distinct_on is None else distinct_on
    found: list[PathSet] = []
    try:
        if search.feasible(0, set()):
            for prefix in _prefixes(search, j):
                used = {v for p in prefix for v in p}
                rest = search.first(list(range(j, len(inst.pairs))), used)
                if rest is None:
                    continue
                found.append(prefix + [rest[i] for i in range(j, len(inst.pairs))])
                if len(found) >= cap:
                    break
    except BudgetExceeded:
        return CountResult(len(found), found, False, budget.used)
    return CountResult(len(found), found, True, budget.used)


def _prefixes(search: _Search, j: int, i: int = 0, used: set | None = None) -> Iterator[list[Path]]:
    used = used or set()
    if i == j:
        yield []
        return
    for p in search.paths(i, used):
        nxt = used | set(p)
        if not search.feasible(i + 1, nxt):
            continue
        if not _settled_groups_solvable(search, j, i + 1, nxt):
            continue
        for rest in _prefixes(search, j, i + 1, nxt):
            yield [p] + rest


def _settled_groups_solvable(search: _Search, j: int, start: int, used: set) -> bool:
    """Stronger forward check while enumerating prefixes.

    Groups of remaining pairs that no prefix pair can touch any more are
    solved right away, so a bad prefix is rejected as soon as it is placed.
    """
    rest = list(range(start, len(search.pairs)))
    useful = {k: search._useful(k, used) for k in rest}
    for group in _overlap_groups(rest, useful):
        if min(group) >= j and search.first(group, used) is None:
            return False
    return True
