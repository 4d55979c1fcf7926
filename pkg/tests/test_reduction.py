from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from updp.gadgets import Drop
from updp.graph import parse_instance, serialize_instance, validate_drawing, validate_instance
from updp.oracle import exact_solve
from updp.reduction import (
    Cnf,
    DimacsError,
    assignment_from_solution,
    clause_edge_usage,
    corpus,
    dropped_edges,
    expected_pair_count,
    gadget_name,
    output_from_files,
    parse_dimacs,
    parse_labels,
    recover_cnf,
    reduce,
    satisfying_assignments,
    serialize_labels,
    witness_from_assignment,
)
from updp.solver import Status, verify_solution


def test_parse_dimacs_basic():
    cnf = parse_dimacs("c comment\np cnf 3 2\n1 -3 0\n2 3\n-1 0\n")
    assert cnf == Cnf(3, ((1, -3), (2, 3, -1)))
    assert parse_dimacs(cnf.to_dimacs()) == cnf
    assert parse_dimacs("p cnf 1 1\n1 0\n%\n0\n") == Cnf(1, ((1,),))


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("1 0\n", 1),
        ("p cnf x 1\n1 0\n", 1),
        ("p cnf 2 1\n1 3 0\n", 2),
        ("p cnf 2 1\n1 a 0\n", 2),
        ("p cnf 2 2\n1 0\n0\n", 3),
        ("p cnf 2 1\n1 2\n", 2),
        ("p cnf 2 2\n1 0\n", 2),
        ("", 1),
    ],
)
def test_parse_dimacs_errors(text, lineno):
    with pytest.raises(DimacsError) as err:
        parse_dimacs(text)
    assert err.value.lineno == lineno


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3), min_size=1, max_size=4),
)))
def test_dimacs_round_trip(nc):
    n, clauses = nc
    cnf = Cnf(n, tuple(map(tuple, clauses)))
    assert parse_dimacs(cnf.to_dimacs()) == cnf


def test_smallest_reduction():
    cnf = parse_dimacs("p cnf 1 1\n1 0\n")
    out = reduce(cnf)
    assert len(out.instance.pairs) == 28 == expected_pair_count(cnf)
    assert dropped_edges(out) == {gadget_name(1, 1, 1): Drop.E_MINUS}
    assert validate_instance(out.instance).ok
    ps = witness_from_assignment(out, (1,))
    assert ps is not None and verify_solution(out.instance, ps).ok
    assert clause_edge_usage(out, ps, 1) == [(gadget_name(1, 1, 1), Drop.E_PLUS)]
    assert assignment_from_solution(out, ps) == (1,)
    assert witness_from_assignment(out, (0,)) is None


def test_negative_literal_drops_e_plus():
    out = reduce(Cnf(2, ((1, -2),)))
    assert dropped_edges(out) == {
        gadget_name(1, 1, 1): Drop.E_MINUS,
        gadget_name(2, 1, 1): Drop.NONE,
        gadget_name(1, 1, 2): Drop.NONE,
        gadget_name(2, 1, 2): Drop.E_PLUS,
    }
    ps = witness_from_assignment(out, (0, 0))
    assert assignment_from_solution(out, ps) == (0, 0)
    # the clause path crosses every row of its column, each on its variable's lane
    assert clause_edge_usage(out, ps, 1) == [
        (gadget_name(1, 1, 2), Drop.E_MINUS),
        (gadget_name(2, 1, 2), Drop.E_MINUS),
    ]


@pytest.mark.parametrize("cnf", [Cnf(1, ((1,), (-1,))), Cnf(1, ((1, -1),)), Cnf(1, ((-1,),))], ids=str)
def test_exact_search_agrees_with_truth_table(cnf):
    out = reduce(cnf)
    res = exact_solve(out.instance)
    assert (res.status is Status.SOLVED) == bool(satisfying_assignments(cnf))
    if res.solved:
        beta = assignment_from_solution(out, res.solution)
        assert cnf.satisfied_by(beta)


@pytest.mark.parametrize("cnf", corpus(max_n=2, max_m=2, size=15), ids=str)
def test_corpus_witnesses(cnf):
    out = reduce(cnf)
    assert len(out.instance.pairs) == expected_pair_count(cnf)
    assert validate_drawing(out.instance.drawing).ok
    drops = dropped_edges(out)
    for j, t in cnf.columns():
        in_column = [drops[gadget_name(i, j, t)] for i in range(1, cnf.n + 1)]
        assert sum(d is not Drop.NONE for d in in_column) == 1
    sat = satisfying_assignments(cnf)
    for beta in [(0,) * cnf.n, (1,) * cnf.n, *sat]:
        ps = witness_from_assignment(out, beta)
        assert (ps is not None) == cnf.satisfied_by(beta)
        if ps is not None:
            assert assignment_from_solution(out, ps) == tuple(beta)


def test_files_round_trip():
    cnf = Cnf(2, ((1, 2), (-1, -2)))
    out = reduce(cnf)
    inst = parse_instance(serialize_instance(out.instance))
    labels = parse_labels(serialize_labels(out.labels))
    assert recover_cnf(inst, labels) == cnf
    again = output_from_files(inst, labels)
    assert again.instance == out.instance


def test_labels_errors():
    with pytest.raises(ValueError):
        parse_labels("a 1\na 2\n")
    with pytest.raises(ValueError):
        parse_labels("a\n")


def test_witness_length_checked():
    with pytest.raises(ValueError):
        witness_from_assignment(reduce(Cnf(1, ((1,),))), (1, 0))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_random_corpus_deterministic(seed):
    assert corpus(seed=seed, size=12) == corpus(seed=seed, size=12)
