import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from geokernel.errors import CollinearPoints, DuplicatePoints, IdenticalCircles
from geokernel.geom import (
    GLIDER_INFINITY,
    Circle,
    Polygon,
    circle_circle_intersections,
    circumcircle,
    congruent_circles,
    dist_sq,
    exact_point,
    float_point,
    is_rhombus,
    make_circle,
    point_on_circle,
    polygon_area,
    sgn,
)
from geokernel.numeric import ExactScalar

from oracles import perp_bisector_center, shoelace

P = exact_point
small = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
ints = st.integers(min_value=-50, max_value=50)


def xy(p):
    return (p.x.as_fraction(), p.y.as_fraction())


def circle(cx, cy, r_sq):
    return make_circle(P(cx, cy), ExactScalar(Fraction(r_sq)))


def test_dist_sq_examples():
    assert dist_sq(P(0, 0), P(0, 0)) == 0
    assert dist_sq(P(0, 0), P(3, 4)) == 25
    d = dist_sq(P("-2.97", "2.45"), P("4.51", "2.34"))
    assert d == Fraction("55.9625")
    assert round(math.sqrt(float(d)), 2) == 7.48


def test_intersection_examples():
    assert [xy(p) for p in circle_circle_intersections(circle(0, 0, 1), circle(2, 0, 1))] == [(1, 0)]
    assert [xy(p) for p in circle_circle_intersections(circle(0, 0, 25), circle(6, 0, 25))] == [(3, 4), (3, -4)]
    assert circle_circle_intersections(circle(0, 0, 1), circle(5, 0, 1)) == []
    with pytest.raises(IdenticalCircles):
        circle_circle_intersections(circle(1, 1, 4), circle(1, 1, 4))
    assert circle_circle_intersections(circle(1, 1, 4), circle(1, 1, 9)) == []


def test_circumcircle_examples():
    c = circumcircle(P(0, 0), P(2, 0), P(0, 2))
    assert xy(c.center) == (1, 1) and c.radius_sq == 2
    c = circumcircle(P(-1, 7), P(3, -1), P(-4, -2))
    assert xy(c.center) == (-1, 2) and c.radius_sq == 25
    assert perp_bisector_center((-1, 7), (3, -1), (-4, -2)) == (-1, 2, 25)
    with pytest.raises(CollinearPoints):
        circumcircle(P(0, 0), P(1, 1), P(2, 2))
    with pytest.raises(DuplicatePoints):
        circumcircle(P(0, 0), P(0, 0), P(2, 2))


def test_polygon_area_examples():
    assert polygon_area(Polygon((P(0, 0), P(1, 0), P(0, 1)))) == Fraction(1, 2)
    fig = (P("-2.97", "2.45"), P("4.51", "2.34"), P("2.3", "-5.67"))
    area = polygon_area(Polygon(fig))
    assert area == Fraction(601579, 20000)
    assert area == shoelace([xy(v) for v in fig])
    assert round(float(area), 3) == 30.079
    assert polygon_area(Polygon((P(0, 0), P(1, 0), P(2, 0)))) == 0
    with pytest.raises(ValueError):
        Polygon((P(0, 0), P(1, 0)))


def test_rhombus_examples():
    assert is_rhombus(P(0, 0), P(1, 0), P(1, 1), P(0, 1))
    assert is_rhombus(P(0, 0), P(3, 4), P(6, 0), P(3, -4))
    assert not is_rhombus(P(0, 0), P(2, 0), P(3, 1), P(1, 1))
    assert not is_rhombus(P(0, 0), P(1, 0), P(0, 0), P(1, 0))   # collinear, equal sides
    assert not is_rhombus(P(0, 0), P(0, 0), P(0, 0), P(0, 0))


def test_congruence_examples():
    a, b = circle(0, 0, 25), circle(3, 3, 25)
    assert congruent_circles(a, b)
    assert not congruent_circles(a, circle(0, 0, Fraction("24.95")))
    assert congruent_circles(a, a)
    assert not congruent_circles(Circle(float_point(0, 0), 25.0), Circle(float_point(0, 0), 24.95))


def test_point_on_circle_examples():
    c = circle(0, 0, 25)
    assert xy(point_on_circle(c, Fraction(1, 2))) == (3, 4)
    assert xy(point_on_circle(c, 0)) == (5, 0)
    assert xy(point_on_circle(c, 3)) == (-4, 3)
    assert xy(point_on_circle(c, GLIDER_INFINITY)) == (-5, 0)


def test_radius_sq_irrational_radius():
    c = circle(0, 0, 2)
    assert c.radius * c.radius == 2
    assert c.radius.depth == 1


@st.composite
def congruent_pairs(draw):
    x1, y1, x2, y2 = (draw(ints) for _ in range(4))
    d2 = (x2 - x1) ** 2 + (y2 - y1) ** 2
    assume(d2 > 0)
    # radius squared strictly larger than (d/2)^2 so the circles cross twice
    r_sq = Fraction(d2, 4) + draw(st.fractions(min_value=Fraction(1, 30), max_value=500,
                                                max_denominator=30))
    return circle(x1, y1, r_sq), circle(x2, y2, r_sq)


@given(congruent_pairs(), st.fractions(min_value=-3, max_value=3, max_denominator=20))
def test_intersection_residual_exact(pair, dr):
    c1, c2 = pair
    c2 = circle(c2.center.x.as_fraction(), c2.center.y.as_fraction(), c2.radius_sq.as_fraction() + dr) \
        if c2.radius_sq.as_fraction() + dr > 0 else c2
    pts = circle_circle_intersections(c1, c2)
    for p in pts:
        for c in (c1, c2):
            assert sgn(dist_sq(p, c.center) - c.radius_sq) == 0
    if len(pts) == 2:
        # the first point is left of the directed center line
        o = (c2.center.x - c1.center.x) * (pts[0].y - c1.center.y) - \
            (c2.center.y - c1.center.y) * (pts[0].x - c1.center.x)
        assert sgn(o) > 0


@given(congruent_pairs())
def test_rhombus_lemma(pair):
    c1, c2 = pair
    i1, i2 = circle_circle_intersections(c1, c2)
    assert is_rhombus(c1.center, i1, c2.center, i2)


@given(ints, ints, ints, ints, ints, ints)
def test_circumcircle_permutations(a, b, c, d, e, f):
    pts = (P(a, b), P(c, d), P(e, f))
    assume((c - a) * (f - b) - (d - b) * (e - a) != 0)
    ref = circumcircle(*pts)
    assert xy(ref.center) + (ref.radius_sq,) == perp_bisector_center((a, b), (c, d), (e, f))
    for p in pts:
        assert dist_sq(p, ref.center) == ref.radius_sq
    for perm in itertools.permutations(pts):
        other = circumcircle(*perm)
        assert xy(other.center) == xy(ref.center) and other.radius_sq == ref.radius_sq


@given(st.lists(st.tuples(small, small), min_size=3, max_size=8), st.integers(0, 7))
def test_polygon_area_rotation_and_orientation(coords, k):
    pts = [P(x, y) for x, y in coords]
    area = polygon_area(Polygon(tuple(pts)))
    k %= len(pts)
    assert polygon_area(Polygon(tuple(pts[k:] + pts[:k]))) == area
    assert polygon_area(Polygon(tuple(reversed(pts)))) == area
    assert area == shoelace(coords)


@given(congruent_pairs())
def test_float_agrees_with_exact(pair):
    c1, c2 = pair
    f1, f2 = (Circle(float_point(float(c.center.x), float(c.center.y)), float(c.radius_sq)) for c in pair)
    d = math.dist(f1.center.as_floats(), f2.center.as_floats())
    r = math.sqrt(f1.radius_sq)
    assume(2 * r - d > 1e-3)
    exact_pts = circle_circle_intersections(c1, c2)
    float_pts = circle_circle_intersections(f1, f2)
    assert len(exact_pts) == len(float_pts) == 2
    scale = max(1.0, max(abs(v) for p in exact_pts for v in p.as_floats()))
    for pe, pf in zip(exact_pts, float_pts):
        for ve, vf in zip(pe.as_floats(), pf.as_floats()):
            assert abs(ve - vf) <= 1e-9 * scale


@given(ints, ints, ints, ints, ints, ints)
def test_float_circumcircle_agrees(a, b, c, d, e, f):
    det = (c - a) * (f - b) - (d - b) * (e - a)
    assume(abs(det) >= 1)
    ce = circumcircle(P(a, b), P(c, d), P(e, f))
    cf = circumcircle(float_point(a, b), float_point(c, d), float_point(e, f))
    assert math.isclose(float(ce.radius_sq), cf.radius_sq, rel_tol=1e-9)
