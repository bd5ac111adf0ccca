"""Planar primitives and constructions, generic over the scalar type.

Coordinates are either :class:`ExactScalar` (every predicate is decided
exactly) or binary64 floats (predicates compare against zero with no epsilon,
except the tangency test of circle intersection).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .errors import (
    CollinearPoints,
    DegenerateCircle,
    DuplicatePoints,
    IdenticalCircles,
    NegativeRadicand,
)
from .numeric.exact import ExactScalar

FLOAT_TANGENCY_TOL = 1e-12
GLIDER_INFINITY = "inf"


def sgn(v):
    if isinstance(v, ExactScalar):
        return v.sign()
    return (v > 0) - (v < 0)


def ssqrt(v):
    if isinstance(v, ExactScalar):
        return v.sqrt()
    if v < 0:
        raise NegativeRadicand(f"square root of negative value {v}")
    return math.sqrt(v)


def sabs(v):
    return -v if sgn(v) < 0 else v


def is_exact(v):
    return isinstance(v, ExactScalar)


@dataclass(frozen=True)
class Point:
    x: object
    y: object

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k):
        return Point(self.x * k, self.y * k)

    def as_floats(self):
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius_sq: object

    @property
    def radius(self):
        return ssqrt(self.radius_sq)


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    @property
    def length_sq(self):
        return dist_sq(self.p, self.q)

    @cached_property
    def length(self):
        return ssqrt(self.length_sq)


@dataclass(frozen=True)
class Polygon:
    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("a polygon needs at least three vertices")

    @cached_property
    def area(self):
        return polygon_area(self)


def exact_point(x, y):
    """Point with exact coordinates from ints, Fractions or decimal strings."""
    return Point(ExactScalar(Fraction(x)), ExactScalar(Fraction(y)))


def float_point(x, y):
    return Point(float(x), float(y))


def same_point(p, q):
    return sgn(p.x - q.x) == 0 and sgn(p.y - q.y) == 0


def dist_sq(p, q):
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def orientation(a, b, c):
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def midpoint(p, q):
    half = Fraction(1, 2) if is_exact(p.x) else 0.5
    return Point((p.x + q.x) * half, (p.y + q.y) * half)


def make_circle(center, radius_sq):
    if sgn(radius_sq) <= 0:
        raise DegenerateCircle(f"circle with nonpositive radius squared {radius_sq}")
    return Circle(center, radius_sq)


def circle_through(center, point):
    return make_circle(center, dist_sq(center, point))


def circle_circle_intersections(c1, c2, tangency_tol=FLOAT_TANGENCY_TOL):
    """Intersection points of two circles.

    The point to the left of the directed line from c1's center to c2's
    center comes first.  Tangent circles give one point, disjoint or
    concentric ones an empty list.
    """
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d2 = dx * dx + dy * dy
    if sgn(d2) == 0:
        if sgn(c1.radius_sq - c2.radius_sq) == 0:
            raise IdenticalCircles("the circles coincide")
        return []
    # foot of the common chord, as a fraction of the center distance
    a = (d2 + c1.radius_sq - c2.radius_sq) / (2 * d2)
    bx = c1.center.x + a * dx
    by = c1.center.y + a * dy
    # (half chord / center distance) squared
    h2 = c1.radius_sq / d2 - a * a
    if is_exact(h2):
        s = h2.sign()
    else:
        s = 0 if abs(h2) <= tangency_tol else sgn(h2)
    if s < 0:
        return []
    if s == 0:
        return [Point(bx, by)]
    k = ssqrt(h2)
    return [Point(bx - k * dy, by + k * dx), Point(bx + k * dy, by - k * dx)]


def circumcircle(p1, p2, p3):
    if same_point(p1, p2) or same_point(p1, p3) or same_point(p2, p3):
        raise DuplicatePoints("circumcircle of coincident points")
    bx, by = p2.x - p1.x, p2.y - p1.y
    cx, cy = p3.x - p1.x, p3.y - p1.y
    det = bx * cy - by * cx
    if sgn(det) == 0:
        raise CollinearPoints("circumcircle of collinear points")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    d = 2 * det
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Circle(Point(p1.x + ux, p1.y + uy), ux * ux + uy * uy)


def signed_area(vertices):
    n = len(vertices)
    total = 0
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        total = total + (p.x * q.y - q.x * p.y)
    half = Fraction(1, 2) if is_exact(vertices[0].x) else 0.5
    return total * half


def polygon_area(poly):
    vertices = poly.vertices if isinstance(poly, Polygon) else tuple(poly)
    if len(vertices) < 3:
        raise ValueError("a polygon needs at least three vertices")
    return sabs(signed_area(vertices))


def is_rhombus(p1, p2, p3, p4):
    pts = (p1, p2, p3, p4)
    sides = [dist_sq(pts[i], pts[(i + 1) % 4]) for i in range(4)]
    if sgn(sides[0]) == 0:
        return False
    if any(sgn(s - sides[0]) != 0 for s in sides[1:]):
        return False
    return not (sgn(orientation(p1, p2, p3)) == 0 and sgn(orientation(p1, p2, p4)) == 0)


def congruent_circles(c1, c2):
    return sgn(c1.radius_sq - c2.radius_sq) == 0


def point_on_circle(c, t):
    """Rational tan-half-angle parametrization of a circle.

    ``t`` is a rational number or :data:`GLIDER_INFINITY`, which names the
    point opposite to the parameter-0 point.
    """
    r = c.radius
    if t == GLIDER_INFINITY:
        return Point(c.center.x - r, c.center.y)
    t = Fraction(t)
    if not is_exact(r):
        t = float(t)
    denom = 1 + t * t
    return Point(c.center.x + r * ((1 - t * t) / denom), c.center.y + r * (2 * t / denom))
