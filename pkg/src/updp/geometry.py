"""Exact predicates over straight-line upward drawings.

Coordinates are Python ints or :class:`fractions.Fraction`; nothing in
here ever touches a float.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

Rational = Union[int, Fraction]


def exact(value: Rational | str) -> Rational:
    """Normalize *value* to an int when integral, else a Fraction."""
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else q


class Point(NamedTuple):
    x: Rational
    y: Rational


class Segment(NamedTuple):
    a: Point
    b: Point


class Side(enum.Enum):
    RIGHT = "right"
    LEFT = "left"
    ON = "on"
    OUT_OF_RANGE = "out_of_range"


def orient(a: Point, b: Point, c: Point) -> Rational:
    """Twice the signed area of (a, b, c); positive for a left turn."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    # assumes p collinear with a-b
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff *p* lies on the closed segment a-b."""
    return orient(a, b, p) == 0 and _on_segment(p, a, b)


def segments_properly_cross(s1: Segment, s2: Segment) -> bool:
    """True iff the segments meet anywhere other than a single shared endpoint.

    Collinear segments overlapping in more than one point count as crossing,
    and so does an endpoint of one lying in the interior of the other.
    """
    a, b = s1
    c, d = s2
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)

    if d1 == d2 == d3 == d4 == 0:
        # collinear: compare parameter intervals along the common line
        if a.x != b.x:
            lo1, hi1 = sorted((a.x, b.x))
            lo2, hi2 = sorted((c.x, d.x))
        else:
            lo1, hi1 = sorted((a.y, b.y))
            lo2, hi2 = sorted((c.y, d.y))
        return max(lo1, lo2) < min(hi1, hi2)

    shared = {a, b} & {c, d}
    if shared:
        # non-collinear segments sharing an endpoint meet only there
        return False

    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    # touching: an endpoint of one segment on the other
    if d1 == 0 and _on_segment(a, c, d):
        return True
    if d2 == 0 and _on_segment(b, c, d):
        return True
    if d3 == 0 and _on_segment(c, a, b):
        return True
    if d4 == 0 and _on_segment(d, a, b):
        return True
    return False


def horizontal_crossings(polyline: Sequence[Point], y: Rational) -> list[Rational]:
    """x-values where the horizontal line at height *y* meets *polyline*.

    The polyline must be strictly y-increasing vertex to vertex, so the
    result has at most one element.
    """
    if not polyline:
        return []
    if y < polyline[0].y or y > polyline[-1].y:
        return []
    if len(polyline) == 1:
        return [polyline[0].x]
    # binary search over the monotone vertex heights
    lo, hi = 0, len(polyline) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if polyline[mid].y <= y:
            lo = mid
        else:
            hi = mid
    p, q = polyline[lo], polyline[hi]
    if y == p.y:
        return [p.x]
    if y == q.y:
        return [q.x]
    return [exact(p.x + (q.x - p.x) * Fraction(y - p.y, q.y - p.y))]


def point_side(p: Point, path: Sequence[Point]) -> Side:
    """Classify *p* against the region to the right/left of a y-monotone path."""
    xs = horizontal_crossings(path, p.y)
    if not xs:
        return Side.OUT_OF_RANGE
    (x,) = xs
    if x < p.x:
        return Side.RIGHT
    if x > p.x:
        return Side.LEFT
    return Side.ON


def direction_key(origin: Point, target: Point) -> Fraction:
    """Sort key ordering upward directions by angle from the positive x-axis.

    Only valid for ``target.y > origin.y``. Smaller key means smaller angle,
    i.e. further to the right. Uses the cotangent dx/dy, which decreases
    monotonically as the angle grows over (0, pi).
    """
    dx = target.x - origin.x
    dy = target.y - origin.y
    return -Fraction(dx) / dy
