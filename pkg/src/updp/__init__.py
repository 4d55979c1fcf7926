"""Vertex-disjoint paths in upward planar drawings.

Right-most path routing over all pair orders, an exact backtracking oracle,
and the SAT gadget construction showing the problem is NP-hard.
"""

from .geometry import Point, Segment, Side, horizontal_crossings, point_side, segments_properly_cross
from .graph import (
    Drawing,
    Instance,
    InstanceSyntaxError,
    Report,
    parse_instance,
    serialize_instance,
    validate_drawing,
    validate_instance,
)
from .oracle import SearchBudget, count_solutions, enumerate_st_paths, exact_solve, rightmost_by_definition
from .order import OrderCycleError, maximal_elements, order_closure, precedes
from .rightmost import reachable_from, rightmost_path, rightmost_successor
from .solver import SolveOutcome, Status, route_in_order, solve, verify_solution

__version__ = "0.1.0"
