from __future__ import annotations

import pytest

from updp.certify import CROSSING_PATHS
from updp.gadgets import (
    E_MINUS,
    E_PLUS,
    Drop,
    Entry,
    build_column,
    build_crossing_gadget,
    build_routing_gadget,
    build_row,
    crossing_edge,
    uses_edge,
)
from updp.graph import validate_drawing, validate_instance
from updp.oracle import complete, count_solutions, exact_solve
from updp.rightmost import path_vertices, reachable_from
from updp.solver import Status, verify_solution


def joined(g, path):
    return " -> ".join(g.label_path(path))


def test_routing_gadget_shape():
    g = build_routing_gadget()
    assert len(g.coords) == 17 and g.main_pairs == 0 and len(g.pairs) == 4
    assert set(g.ports) == {"e_t", "e_l", "e_r", "e_b"}
    assert validate_drawing(g.drawing()).ok and validate_instance(g.instance()).ok


@pytest.mark.parametrize("drop", list(Drop))
def test_crossing_gadget_validates(drop):
    g = build_crossing_gadget(drop, Entry.PLUS)
    assert validate_drawing(g.drawing()).ok and validate_instance(g.instance()).ok
    assert len(g.pairs) == g.main_pairs + 24


def test_drops_remove_exactly_one_edge():
    full = build_crossing_gadget(Drop.NONE).edges
    for drop, edge in [(Drop.E_PLUS, E_PLUS), (Drop.E_MINUS, E_MINUS)]:
        g = build_crossing_gadget(drop)
        assert full - g.edges == {crossing_edge(g, drop)}
        assert g.edges <= full
        assert tuple(g.names[v] for v in crossing_edge(g, drop)) == edge


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("variant", list(Entry))
def test_rows_and_columns_validate(s, variant):
    for g in (build_row(s, variant), build_column(s, [Drop.NONE] * s, [variant] * s)):
        assert validate_drawing(g.drawing()).ok and validate_instance(g.instance()).ok


def test_label_paths_collapse_boxes_and_bends():
    g = build_crossing_gadget(Drop.NONE, Entry.PLUS)
    sol = exact_solve(g.instance()).solution
    assert joined(g, sol[0]) == CROSSING_PATHS[Entry.PLUS]["entry"]
    assert all("bend" not in label and "." not in label for label in g.label_path(sol[1]))


def test_routing_gadget_never_turns():
    g = build_routing_gadget()
    inst = g.instance()
    p = g.ports
    res = count_solutions(inst, cap=100)
    assert res.complete and res.count == 4
    for sol in res.solutions:
        blocked = path_vertices(sol)
        assert p["e_r"] not in reachable_from(inst.drawing, p["e_t"], blocked)
        assert p["e_b"] not in reachable_from(inst.drawing, p["e_l"], blocked)


def test_routing_gadget_straight_routes():
    """Each straight route survives some solution; none survives all of them.

    The second half contradicts the stronger reading in which one solution
    leaves both routes open; see the decisions ledger.
    """
    g = build_routing_gadget()
    inst = g.instance()
    p = g.ports
    open_routes = []
    for sol in count_solutions(inst, cap=100).solutions:
        blocked = path_vertices(sol)
        tb = p["e_b"] in reachable_from(inst.drawing, p["e_t"], blocked)
        lr = p["e_r"] in reachable_from(inst.drawing, p["e_l"], blocked)
        open_routes.append((tb, lr))
    assert any(tb for tb, _ in open_routes) and any(lr for _, lr in open_routes)
    assert not any(tb and lr for tb, lr in open_routes)
    cross = inst.with_pairs([(p["e_l"], p["e_r"]), (p["e_t"], p["e_b"])])
    assert exact_solve(cross).status is Status.NO_SOLUTION


@pytest.mark.parametrize("entry", list(Entry))
def test_crossing_four_paths(entry):
    want = CROSSING_PATHS[entry]
    exit_ = "H^out" if entry is Entry.PLUS else "L^out"
    g = build_crossing_gadget(Drop.NONE, entry)
    inst = g.instance([("Z", exit_)])
    n = g.main_pairs
    # structural pairs are entry, T, X; the Z pair sits at the very end
    order = list(range(n)) + [len(inst.pairs) - 1] + list(range(n, len(inst.pairs) - 1))
    reordered = inst.with_pairs(inst.pairs[i] for i in order)
    res = count_solutions(reordered, cap=2, distinct_on=n + 1)
    assert res.complete and res.count == 1
    got = [joined(g, p) for p in res.solutions[0][: n + 1]]
    assert got == [want["entry"], want["T"], want["X"], want["Z"]]


def test_crossing_plus_case_three_paths_unique():
    g = build_crossing_gadget(Drop.NONE, Entry.PLUS)
    res = count_solutions(g.instance(), cap=2, distinct_on=g.main_pairs)
    assert res.complete and res.count == 1
    fixed = dict(enumerate(res.solutions[0][: g.main_pairs]))
    assert complete(g.instance([("Z", "H^out")]), fixed).status is Status.SOLVED
    assert complete(g.instance([("Z", "L^out")]), fixed).status is Status.NO_SOLUTION


def test_crossing_minus_case_has_two_clause_routings():
    """Without the Z path, T can also reach B through m8, m10, m11.

    That second routing blocks Z from L^out; with the Z pair present only the
    expected routing remains (see test_crossing_four_paths).
    """
    g = build_crossing_gadget(Drop.NONE, Entry.MINUS)
    res = count_solutions(g.instance(), cap=3, distinct_on=g.main_pairs)
    assert res.complete and res.count == 2
    ts = sorted(joined(g, sol[1]) for sol in res.solutions)
    assert ts == [
        "T -> m1 -> b1 -> b2 -> b3 -> m0 -> m6 -> m12 -> B",
        "T -> m1 -> b1 -> b2 -> b3 -> m0 -> m6 -> m8 -> m10 -> m11 -> m12 -> B",
    ]


@pytest.mark.parametrize("variant, lane", [(Entry.PLUS, "H^in"), (Entry.MINUS, "L^in")])
def test_row_of_two(variant, lane):
    g = build_row(2, variant)
    res = count_solutions(g.instance(), cap=2, distinct_on=g.main_pairs)
    assert res.complete and res.count == 1
    sol = res.solutions[0]
    assert g[f"G1.{lane}"] in sol[0]
    z_path = sol[g.main_pairs - 1]
    assert g.names[z_path[0]] == "G1.Z" and g[f"G2.{lane}"] in z_path


@pytest.mark.parametrize("entry, used, unused", [(Entry.PLUS, Drop.E_PLUS, Drop.E_MINUS), (Entry.MINUS, Drop.E_MINUS, Drop.E_PLUS)])
def test_column_of_one(entry, used, unused):
    g = build_column(1, [Drop.NONE], [entry])
    out = exact_solve(g.instance())
    assert out.solved and verify_solution(g.instance(), out.solution).ok
    q = out.solution[0]
    assert uses_edge(q, crossing_edge(g, used, "G1.")) and not uses_edge(q, crossing_edge(g, unused, "G1."))
    dropped = build_column(1, [used], [entry])
    assert exact_solve(dropped.instance()).status is Status.NO_SOLUTION
    other = build_column(1, [unused], [entry])
    assert exact_solve(other.instance()).status is Status.SOLVED


def test_duplicate_names_rejected():
    g = build_routing_gadget()
    with pytest.raises(ValueError):
        g.add_vertex("r1", (100, 100))
