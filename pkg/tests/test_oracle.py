from __future__ import annotations

import pytest

from conftest import make
from updp.oracle import SearchBudget, complete, count_solutions, enumerate_st_paths, exact_solve
from updp.solver import Status, verify_solution


def ladder():
    # two columns 0-2-4 and 1-3-5 with the planar rungs 0->3 and 2->5
    return make(
        {0: (0, 0), 1: (2, 0), 2: (0, 2), 3: (2, 2), 4: (0, 4), 5: (2, 4)},
        [(0, 2), (2, 4), (1, 3), (3, 5), (0, 3), (2, 5)],
    )


def test_enumerate_paths_rightmost_first():
    d = ladder().drawing
    paths, truncated = enumerate_st_paths(d, 0, 5)
    assert not truncated
    assert paths[0] == (0, 3, 5)
    assert set(paths) == {(0, 3, 5), (0, 2, 5)}
    assert enumerate_st_paths(d, 0, 5, limit=1) == ([(0, 3, 5)], True)


def test_exact_solve_and_terminal_rule():
    inst = ladder().with_pairs([(0, 4), (1, 5)])
    out = exact_solve(inst)
    assert out.status is Status.SOLVED and verify_solution(inst, out.solution).ok
    # the only 0-2 path passes through 1, a terminal of the other pair
    blocked = make({0: (0, 0), 1: (0, 1), 2: (0, 2), 3: (1, 2)}, [(0, 1), (1, 2), (1, 3)], [(0, 2), (1, 3)])
    assert exact_solve(blocked).status is Status.NO_SOLUTION


def test_counting():
    inst = ladder().with_pairs([(0, 5)])
    res = count_solutions(inst, cap=10)
    assert res.count == 2 and res.complete
    assert count_solutions(inst, cap=1).count == 1


def test_budget_is_never_a_no():
    inst = ladder().with_pairs([(0, 4), (1, 5)])
    out = exact_solve(inst, SearchBudget(max_nodes=1))
    assert out.status is Status.BUDGET_EXCEEDED
    res = count_solutions(inst, budget=SearchBudget(max_nodes=1))
    assert not res.complete and res.exceeded


def test_complete_extends_fixed_paths():
    inst = ladder().with_pairs([(0, 4), (1, 5)])
    out = complete(inst, {0: (0, 2, 4)})
    assert out.status is Status.SOLVED and out.solution[0] == (0, 2, 4)
    with pytest.raises(ValueError):
        complete(inst, {0: (0, 3, 5)})


def test_independent_groups_are_solved_separately():
    # many copies of a two-path gadget side by side; the search must stay small
    coords, edges, pairs = {}, [], []
    for c in range(8):
        base = 6 * c
        x = 10 * c
        coords.update({base: (x, 0), base + 1: (x + 2, 0), base + 2: (x, 2), base + 3: (x + 2, 2),
                       base + 4: (x, 4), base + 5: (x + 2, 4)})
        edges += [(base, base + 2), (base + 2, base + 4), (base + 1, base + 3), (base + 3, base + 5),
                  (base, base + 3), (base + 2, base + 5)]
        pairs += [(base, base + 4), (base + 1, base + 5)]
    inst = make(coords, edges, pairs)
    budget = SearchBudget(max_nodes=10_000)
    assert exact_solve(inst, budget).status is Status.SOLVED
