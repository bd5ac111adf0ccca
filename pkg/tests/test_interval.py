import math
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from geokernel.errors import DomainViolation, NonFinite
from geokernel.numeric import (
    DisplayRounded,
    Exact,
    Float,
    Interval,
    ScalarMode,
    interval_add,
    interval_cos,
    interval_div,
    interval_exp,
    interval_ln,
    interval_mul,
    interval_sin,
    interval_sqrt,
    interval_sub,
    round_display,
)
from geokernel.numeric.interval import interval_pow

mpmath.mp.prec = 200
finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, lo=-1e3, hi=1e3):
    a = draw(st.floats(min_value=lo, max_value=hi, allow_nan=False))
    b = draw(st.floats(min_value=lo, max_value=hi, allow_nan=False))
    return Interval(min(a, b), max(a, b))


def points_in(X, n=5):
    if X.lo == X.hi:
        return [X.lo]
    pts = [X.lo + (X.hi - X.lo) * i / (n - 1) for i in range(n)]
    return [min(max(x, X.lo), X.hi) for x in pts]


def test_mul_example():
    assert interval_mul(Interval(1, 2), Interval(-3, 0.5)) == Interval(-6.0, 1.0)


def test_sin_half_period():
    assert interval_sin(Interval(0.0, math.pi)) == Interval(0.0, 1.0)


def test_div_by_zero_interval():
    with pytest.raises(DomainViolation):
        interval_div(Interval(1, 4), Interval(0, 1))


def test_domain_errors():
    with pytest.raises(DomainViolation):
        interval_ln(Interval(-2, -1))
    with pytest.raises(DomainViolation):
        interval_ln(Interval(0, 1))
    with pytest.raises(DomainViolation):
        interval_sqrt(Interval(-2, -1))


def test_exact_operations_stay_tight():
    assert interval_add(Interval(0.5, 0.5), Interval(0.25, 0.25)) == Interval(0.75, 0.75)
    third = interval_div(Interval(1, 1), Interval(3, 3))
    assert third.lo < third.hi and Fraction(third.lo) < Fraction(1, 3) < Fraction(third.hi)
    assert math.nextafter(third.lo, 1) == third.hi


def test_round_display_examples():
    assert round_display(2.455, 2) == Decimal("2.46")
    assert round_display(-5.674999, 2) == Decimal("-5.67")
    assert round_display(24.9512, 2) == Decimal("24.95")
    assert round_display(-2.455, 2) == Decimal("-2.46")
    with pytest.raises(NonFinite):
        round_display(math.inf, 2)


def test_scalar_modes():
    assert ScalarMode.parse("exact") == Exact
    assert ScalarMode.parse("float") == Float
    assert ScalarMode.parse("display", 3) == DisplayRounded(3)
    assert ScalarMode.parse("display(4)") == DisplayRounded(4)
    assert DisplayRounded().decimals == 2
    assert DisplayRounded(2).literal(Fraction(1, 3)) == 0.33
    with pytest.raises(ValueError):
        ScalarMode.parse("approx")


@given(intervals(), intervals())
def test_arithmetic_sound(X, Y):
    for x in points_in(X):
        for y in points_in(Y):
            fx, fy = Fraction(x), Fraction(y)
            s, d, p = interval_add(X, Y), interval_sub(X, Y), interval_mul(X, Y)
            assert Fraction(s.lo) <= fx + fy <= Fraction(s.hi)
            assert Fraction(d.lo) <= fx - fy <= Fraction(d.hi)
            assert Fraction(p.lo) <= fx * fy <= Fraction(p.hi)


@given(intervals(), intervals(lo=0.001, hi=1e3))
def test_division_sound(X, Y):
    q = interval_div(X, Y)
    for x in points_in(X):
        for y in points_in(Y):
            assert Fraction(q.lo) <= Fraction(x) / Fraction(y) <= Fraction(q.hi)


@given(intervals(), st.integers(min_value=0, max_value=7))
def test_power_sound(X, n):
    P = interval_pow(X, n)
    for x in points_in(X):
        assert Fraction(P.lo) <= Fraction(x) ** n <= Fraction(P.hi)


def _inside(v, Y):
    return mpmath.mpf(Y.lo) <= v <= mpmath.mpf(Y.hi)


@given(intervals(lo=-1e4, hi=1e4))
def test_trig_sound(X):
    S, C = interval_sin(X), interval_cos(X)
    for x in points_in(X, 9):
        assert _inside(mpmath.sin(mpmath.mpf(x)), S)
        assert _inside(mpmath.cos(mpmath.mpf(x)), C)
    assert -1 <= S.lo <= S.hi <= 1


@given(intervals(lo=-700, hi=700))
def test_exp_sound(X):
    E = interval_exp(X)
    for x in points_in(X):
        assert _inside(mpmath.exp(mpmath.mpf(x)), E)


@given(intervals(lo=1e-300, hi=1e300))
def test_ln_sqrt_sound(X):
    L, R = interval_ln(X), interval_sqrt(X)
    for x in points_in(X):
        assert _inside(mpmath.log(mpmath.mpf(x)), L)
        assert _inside(mpmath.sqrt(mpmath.mpf(x)), R)


@given(finite)
def test_trig_of_point_is_narrow(x):
    S = interval_sin(Interval(x, x))
    assert S.hi - S.lo <= 1e-9


def test_trig_critical_points_included():
    # hull includes the maximum at pi/2 + 2k pi for huge k
    k = 10 ** 5
    c = float(mpmath.pi / 2 + 2 * mpmath.pi * k)
    S = interval_sin(Interval(c - 0.1, c + 0.1))
    assert S.hi == 1.0
