from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import drawings, make
from updp.geometry import Point
from updp.graph import (
    Drawing,
    Instance,
    InstanceSyntaxError,
    parse_instance,
    serialize_instance,
    topological_order,
    validate_drawing,
    validate_instance,
)


def test_out_lists_sorted_rightmost_first():
    d = Drawing({0: (0, 0), 1: (-2, 1), 2: (2, 1), 3: (0, 1)}, [(0, 1), (0, 2), (0, 3)])
    assert list(d.out[0]) == [2, 3, 1]
    assert sorted(d.inn[3]) == [0]


def test_parse_and_serialize():
    text = "# tiny\nv 0 0 0\nv 1 1/2 1\ne 0 1\np 0 1\n"
    inst = parse_instance(text)
    assert inst.drawing.coords[1] == Point(Fraction(1, 2), 1)
    assert inst.pairs == ((0, 1),)
    assert serialize_instance(inst) == "v 0 0 0\nv 1 1/2 1\ne 0 1\np 0 1\n"


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("v 0 0\n", 1, "expected"),
        ("v 0 0 0\nv 0 1 1\n", 2, "declared twice"),
        ("v 0 0 0\ne 0 5\n", 2, "undeclared vertex 5"),
        ("v 0 0 0\nv 1 0 1\ne 0 1\ne 0 1\n", 4, "duplicate edge"),
        ("v 0 a 0\n", 1, "bad coordinate"),
        ("x 1 2\n", 1, "unknown record"),
        ("v 0 0 0\np 0 9\n", 2, "undeclared vertex 9"),
    ],
)
def test_parse_errors_cite_line(text, line, fragment):
    with pytest.raises(InstanceSyntaxError) as exc:
        parse_instance(text)
    assert exc.value.lineno == line
    assert fragment in str(exc.value)


@settings(max_examples=200)
@given(drawings())
def test_round_trip(d):
    pairs = ((0, len(d) - 1),) if len(d) > 1 else ()
    inst = Instance(d, pairs)
    again = parse_instance(serialize_instance(inst))
    assert again == inst
    assert serialize_instance(again) == serialize_instance(inst)


@settings(max_examples=200)
@given(drawings())
def test_generated_drawings_validate(d):
    assert validate_drawing(d).ok
    assert topological_order(d) is not None


@pytest.mark.parametrize(
    "coords, edges, kind",
    [
        ({0: (0, 0), 1: (0, 0)}, [], "coincident_vertices"),
        ({0: (0, 0)}, [(0, 0)], "self_loop"),
        ({0: (0, 0), 1: (1, 0)}, [(0, 1)], "non_upward_edge"),
        ({0: (0, 0), 1: (0, 1)}, [(1, 0)], "non_upward_edge"),
        ({0: (0, 0), 1: (2, 2), 2: (2, 0), 3: (0, 2)}, [(0, 1), (2, 3)], "crossing_edges"),
        ({0: (0, 0), 1: (0, 1), 2: (0, 2)}, [(0, 2)], "vertex_on_edge"),
        ({0: (0, 0)}, [(0, 7)], "unknown_vertex"),
    ],
)
def test_validator_kinds(coords, edges, kind):
    assert kind in validate_drawing(Drawing(coords, edges)).kinds()


def test_cycle_is_reported():
    # a cycle needs a non-upward edge; both are reported
    d = Drawing({0: (0, 0), 1: (1, 1)}, [(0, 1), (1, 0)])
    assert {"cycle", "non_upward_edge"} <= validate_drawing(d).kinds()


def test_instance_checks(diamond):
    assert validate_instance(diamond).ok
    d = diamond.drawing
    assert "no_pairs" in validate_instance(Instance(d, ())).kinds()
    assert "unknown_terminal" in validate_instance(Instance(d, ((0, 9),))).kinds()
    assert "coincident_terminals" in validate_instance(Instance(d, ((1, 1),))).kinds()
    assert "duplicated_terminal" in validate_instance(Instance(d, ((0, 3), (0, 1)))).kinds()


def test_induced_and_without_edges(diamond):
    d = diamond.drawing
    assert d.induced([0, 1, 3]).edges == {(0, 1), (1, 3)}
    assert d.without_edges([(0, 1)]).edges == {(0, 2), (1, 3), (2, 3)}


def test_make_helper():
    inst = make({0: (0, 0), 1: (0, 1)}, [(0, 1)], [(0, 1)])
    assert inst.k == 1
