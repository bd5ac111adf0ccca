import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geokernel.analysis import LimitVerdict, certify_limit, numeric_probe, parse_expr
from geokernel.analysis.limits import (
    CERTIFIED,
    ESTIMATE,
    INCONCLUSIVE,
    NO_LIMIT,
    UNDEFINED_VERDICT,
    simple_rational,
    substitute_reciprocal,
)
from geokernel.numeric import Interval

from oracles import mp_eval


def limit(text, at="0"):
    return certify_limit(parse_expr(text), at)


def test_squeeze():
    v = limit("x*sin(1/x)")
    assert (v.kind, v.value) == (CERTIFIED, 0)
    assert v.certificate[0] == "R1"


def test_quotient():
    v = limit("sin(x)/x")
    assert (v.kind, v.value) == (CERTIFIED, Fraction(1))
    assert v.certificate == ("R2",)
    enc = v.evidence["enclosure"]
    assert enc.contains(1.0) and enc.width < 1e-6


def test_oscillation():
    v = limit("sin(1/x)", "0+")
    assert v.kind == NO_LIMIT and v.certificate == ("R4",)
    values = {w["value"] for w in v.evidence["witnesses"]}
    assert values == {"+1", "-1"}
    for w in v.evidence["witnesses"]:
        target = 1.0 if w["value"] == "+1" else -1.0
        lo, hi = w["enclosure"]
        assert lo <= target <= hi and hi - lo < 1e-3
        assert w["x"] > 0


def test_h_at_infinity():
    v = limit("(1+1/x)^x", "inf")
    assert v.kind == ESTIMATE
    assert v.certificate[0] == "R3" and v.certificate[-1] == "R5"
    assert abs(v.value - math.e) < 1e-6


def test_h_at_zero_plus():
    v = limit("(1+1/x)^x", "0+")
    assert v.kind in (CERTIFIED, ESTIMATE)
    assert abs(v.value - 1) < 1e-6


def test_further_cases():
    assert limit("(1-cos(x))/x^2").value == Fraction(1, 2)
    assert limit("(exp(x)-1)/x").value == 1
    assert limit("x*sin(1/x)", "inf").value == 1
    assert limit("x^2+1").value == 1
    assert limit("cos(3/x)", "0-").kind == NO_LIMIT
    assert limit("abs(x)/x").kind == INCONCLUSIVE
    assert limit("ln(x)", "0-").kind == UNDEFINED_VERDICT
    assert limit("1/x", "0+").kind == INCONCLUSIVE


def test_exit_codes_and_json():
    assert limit("sin(x)/x").exit_code == 0
    assert limit("sin(1/x)", "0+").exit_code == 1
    assert limit("(1+1/x)^x", "inf").exit_code == 2
    d = limit("sin(x)/x").to_dict()
    assert d["schema"] == "limit/1" and d["value"] == "1" and d["certificate"] == ["R2"]


def test_bad_point():
    with pytest.raises(ValueError):
        limit("x", "1")


def test_simple_rational():
    assert simple_rational(Interval(0.4999999, 0.5000001)) == Fraction(1, 2)
    assert simple_rational(Interval(0.1, 0.9)) is None
    assert simple_rational(Interval(math.e - 1e-7, math.e + 1e-7)) is None


def test_reciprocal_substitution():
    e = substitute_reciprocal(parse_expr("x*sin(1/x)"))
    assert e == parse_expr("(1/x)*sin(x)")


# -- certified values agree with an independent numeric oracle ---------------------

CASES = [("sin(x)/x", "0"), ("x*sin(1/x)", "0"), ("(1-cos(x))/x^2", "0"),
         ("(exp(x)-1)/x", "0"), ("sin(3*x)/sin(x)", "0"), ("x*sin(1/x)", "inf"),
         ("ln(1+x)/x", "0+"), ("(1+x)^2", "0-"), ("x^2*cos(1/x)", "0"),
         ("(x - sin(x))/x^3", "0"), ("exp(x)*cos(x)", "0")]


@pytest.mark.parametrize("text,at", CASES)
def test_certified_matches_probes(text, at):
    v = limit(text, at)
    assert v.kind == CERTIFIED
    # R5 machinery run independently, and a 200-bit oracle at small offsets
    e = parse_expr(text)
    at_infinity = at in ("inf", "-inf")
    if at_infinity:
        e, at = substitute_reciprocal(e), ("0+" if at == "inf" else "0-")
    probe = numeric_probe(e, at)
    assert probe.kind == ESTIMATE
    assert abs(probe.value - float(v.value)) < 1e-4
    sign = -1 if at == "0-" else 1
    for k in (12, 16, 20):
        x = sign * 2.0 ** -k
        y = mp_eval(text, 1 / x if at_infinity else x)
        if y is not None:
            assert abs(float(y) - float(v.value)) < 1e-3


@st.composite
def quotient_exprs(draw):
    a = draw(st.integers(1, 5))
    b = draw(st.integers(1, 5))
    f = draw(st.sampled_from(["sin", "exp"]))
    num = f"sin({a}*x)" if f == "sin" else f"(exp({a}*x)-1)"
    return f"{num}/sin({b}*x)", Fraction(a, b)


@settings(max_examples=30)
@given(quotient_exprs())
def test_quotient_values(case):
    text, want = case
    v = limit(text)
    assert v.kind == CERTIFIED and v.value == want
