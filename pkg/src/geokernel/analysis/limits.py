"""Limit certification at 0, 0+, 0-, +inf and -inf.

Rules are tried in a fixed order and the first that applies decides:

* R3  x -> ±inf is rewritten as t = 1/x -> 0±.
* R1  squeeze: u·v with v = sin(..) or cos(..) and u certified to tend to 0.
* R2  Taylor models: a quotient u/w (or a product u·(a/w)) whose models
      share a zero of order j at the point is divided by h^j and enclosed
      on shrinking neighborhoods; an expression with a model at the point
      is continuous there and is enclosed the same way.
* R4  sin(c/x), cos(c/x) attain +1 and -1 in every neighborhood of 0.
* R5  numeric probes x_k = ±2^-k, k = 10..40, evaluated with 256-bit
      arithmetic: only ever an estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..errors import DenominatorMayVanish, DomainViolation, UnsupportedNode
from ..numeric.interval import Interval, interval_div, interval_sin, interval_cos
from .expr import UNDEFINED, Add, Const, Div, Func, Mul, Neg, Pow, Sub, Var, eval_point_mp, print_expr
from .taylor import ZERO, taylor_model

CERTIFIED = "Certified"
NO_LIMIT = "NoLimitCertified"
ESTIMATE = "NumericEstimate"
UNDEFINED_VERDICT = "Undefined"
INCONCLUSIVE = "Inconclusive"

POINTS = ("0", "0+", "0-", "inf", "-inf")
TARGET_WIDTH = 1e-6
MAX_HALVINGS = 60
TM_DEGREE = 6
PROBE_RANGE = range(10, 41)
PROBE_AGREEMENT = 1e-6
SIMPLE_DENOMINATOR = 100


@dataclass(frozen=True)
class LimitVerdict:
    kind: str
    value: object = None
    certificate: tuple = ()
    reason: str = ""
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def exit_code(self):
        return {CERTIFIED: 0, NO_LIMIT: 1, ESTIMATE: 2, INCONCLUSIVE: 2, UNDEFINED_VERDICT: 3}[self.kind]

    def __str__(self):
        if self.kind == CERTIFIED:
            return f"Certified: {_fmt(self.value)} ({self.reason})"
        if self.kind == ESTIMATE:
            return f"NumericEstimate: {_fmt(self.value)} ({self.reason})"
        if self.kind == INCONCLUSIVE and not self.reason:
            return "Inconclusive"
        return f"{self.kind}: {self.reason}"

    def to_dict(self):
        return {
            "schema": "limit/1",
            "verdict": self.kind,
            "value": None if self.value is None else _fmt(self.value),
            "reason": self.reason,
            "certificate": list(self.certificate),
            "evidence": {k: _jsonable(v) for k, v in self.evidence.items()},
        }


def _fmt(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def _jsonable(v):
    if isinstance(v, Interval):
        return [v.lo, v.hi]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return _fmt(v)
    if v is UNDEFINED:
        return None
    return v


# -- helpers -----------------------------------------------------------------------

def simple_rational(enc, max_den=SIMPLE_DENOMINATOR):
    """The unique fraction with denominator <= max_den inside enc, if exactly one."""
    lo, hi = Fraction(enc.lo), Fraction(enc.hi)
    found = set()
    for q in range(1, max_den + 1):
        p = math.ceil(lo * q)
        while Fraction(p, q) <= hi:
            found.add(Fraction(p, q))
            if len(found) > 1:
                return None
            p += 1
    return found.pop() if len(found) == 1 else None


def _report(enc):
    q = simple_rational(enc)
    return q if q is not None else enc.mid


def _neighborhood(at, delta):
    if at == "0+":
        return Interval(0.0, delta)
    if at == "0-":
        return Interval(-delta, 0.0)
    return Interval(-delta, delta)


def substitute_reciprocal(e):
    """e with x replaced by 1/x, simplifying 1/(1/x) and a/(1/x)."""
    def sub(n):
        if isinstance(n, Var):
            return Div(Const(1), Var())
        if isinstance(n, Const):
            return n
        if isinstance(n, Neg):
            return Neg(sub(n.arg))
        if isinstance(n, Func):
            return Func(n.name, sub(n.arg))
        if isinstance(n, Pow):
            return Pow(sub(n.base), n.exponent)
        left, right = sub(n.left), sub(n.right)
        if isinstance(n, Div) and right == Div(Const(1), Var()):
            return Var() if left == Const(1) else Mul(left, Var())
        return type(n)(left, right)
    return sub(e)


def _is_trig(e):
    return isinstance(e, Func) and e.name in ("sin", "cos")


# -- R5: probes ----------------------------------------------------------------------

def probe_sequence(e, sign):
    # high precision: binary64 cancellation would fake a converged value
    return [(sign * 2.0 ** -k, eval_point_mp(e, sign * 2.0 ** -k)) for k in PROBE_RANGE]


def _probe_side(e, sign):
    probes = probe_sequence(e, sign)
    values = [v for _, v in probes]
    if all(v is UNDEFINED for v in values):
        return None, probes
    tail = values[-5:]
    if any(v is UNDEFINED for v in tail):
        return False, probes
    if max(tail) - min(tail) > PROBE_AGREEMENT:
        return False, probes
    # Richardson step for an error term linear in x (x halves each probe)
    rich = 2 * tail[-1] - tail[-2]
    value = rich if abs(rich - tail[-1]) <= PROBE_AGREEMENT else tail[-1]
    return value, probes


def numeric_probe(e, at):
    sides = {"0+": (1.0,), "0-": (-1.0,), "0": (1.0, -1.0)}[at]
    results = [_probe_side(e, s) for s in sides]
    evidence = {f"probes{'+' if s > 0 else '-'}": [[x, v] for x, v in r[1]]
                for s, r in zip(sides, results)}
    defined = [r[0] for r in results if r[0] is not None]
    if not defined:
        return LimitVerdict(UNDEFINED_VERDICT, reason=f"{print_expr(e)} is undefined at every probe",
                            certificate=("R5",), evidence=evidence)
    if any(v is False for v in defined):
        return LimitVerdict(INCONCLUSIVE, reason="probes do not settle", certificate=("R5",),
                            evidence=evidence)
    if max(defined) - min(defined) > PROBE_AGREEMENT:
        return LimitVerdict(INCONCLUSIVE, reason="one-sided probes disagree", certificate=("R5",),
                            evidence=evidence)
    value = defined[0]
    return LimitVerdict(ESTIMATE, value=value, certificate=("R5",),
                        reason="numeric probes x = ±2^-k, k = 10..40; not a proof",
                        evidence=evidence)


# -- R2: Taylor models ---------------------------------------------------------------

def _shrink(build, at):
    """Enclose on halving neighborhoods until narrow; None when a model fails."""
    delta = 1.0
    last = None
    for step in range(MAX_HALVINGS):
        try:
            enc = build(_neighborhood(at, delta))
        except (DenominatorMayVanish, DomainViolation, UnsupportedNode, ValueError,
                OverflowError, ZeroDivisionError):
            enc = None
        if enc is not None and enc.is_bounded():
            last = (enc, delta, step)
            if enc.width < TARGET_WIDTH:
                return last
        delta /= 2
    return None


def _quotient_enclosure(u, w, at):
    def build(D):
        tu = taylor_model(u, 0, TM_DEGREE, D)
        tw = taylor_model(w, 0, TM_DEGREE, D)
        j = 0
        while j < min(tu.degree, tw.degree) and tu.coeffs[j] == ZERO and tw.coeffs[j] == ZERO:
            j += 1
        if j == 0:
            return None
        su, sw = tu.shifted(j), tw.shifted(j)
        den = sw.range()
        if den.contains_zero():
            return None
        return interval_div(su.range(), den)
    return _shrink(build, at)


def _continuous_enclosure(e, at):
    return _shrink(lambda D: taylor_model(e, 0, TM_DEGREE, D).range(), at)


def _certified(enc_info, rule, what):
    enc, delta, step = enc_info
    value = _report(enc)
    return LimitVerdict(CERTIFIED, value=value, certificate=(rule,),
                        reason=what,
                        evidence={"enclosure": enc, "neighborhood_radius": delta, "halvings": step})


def _as_quotient(e):
    """(u, w) with e = u/w; a product with a quotient factor counts too."""
    if isinstance(e, Div):
        return e.left, e.right
    if isinstance(e, Mul):
        if isinstance(e.left, Div):
            return Mul(e.left.left, e.right), e.left.right
        if isinstance(e.right, Div):
            return Mul(e.left, e.right.left), e.right.right
    return None


# -- R4: oscillation -------------------------------------------------------------------

def _reciprocal_coefficient(arg):
    """c when arg is c/x with c rational and nonzero."""
    if isinstance(arg, Div) and isinstance(arg.right, Var) and isinstance(arg.left, Const):
        return arg.left.value if arg.left.value != 0 else None
    return None


def _oscillation(e, at):
    c = _reciprocal_coefficient(e.arg)
    if c is None:
        return None
    fn = interval_sin if e.name == "sin" else interval_cos
    # phases where the function is +1 and -1
    phases = (("+1", mpmath.pi / 2), ("-1", 3 * mpmath.pi / 2)) if e.name == "sin" \
        else (("+1", mpmath.mpf(0)), ("-1", mpmath.pi))
    side = -1 if at == "0-" else 1
    direction = side * (1 if c > 0 else -1)     # sign of c/x on that side
    witnesses = []
    with mpmath.workprec(80):
        for K in (10 ** 3, 10 ** 6, 10 ** 9):
            for label, phase in phases:
                y = phase + 2 * mpmath.pi * direction * K
                x = float(mpmath.mpf(c.numerator) / c.denominator / y)
                enc = fn(interval_div(Interval.point(c), Interval(x, x)))
                witnesses.append({"x": x, "value": label, "enclosure": [enc.lo, enc.hi]})
    return LimitVerdict(
        NO_LIMIT, certificate=("R4",),
        reason=f"{print_expr(e)} attains +1 and -1 in every neighborhood of 0 "
               f"(argument {print_expr(e.arg)} is unbounded there)",
        evidence={"witnesses": witnesses})


# -- driver ------------------------------------------------------------------------------

def certify_limit(e, at="0"):
    """LimitVerdict for the limit of e as x tends to ``at``."""
    if at not in POINTS:
        raise ValueError(f"limit point must be one of {', '.join(POINTS)}")
    if at in ("inf", "-inf"):
        t = substitute_reciprocal(e)
        inner = certify_limit(t, "0+" if at == "inf" else "0-")
        return LimitVerdict(inner.kind, inner.value, ("R3",) + inner.certificate,
                            inner.reason + f"; via x = 1/t with t -> {'0+' if at == 'inf' else '0-'}",
                            dict(inner.evidence, substituted=print_expr(t)))
    # R1: bounded factor
    if isinstance(e, Mul):
        for u, v in ((e.left, e.right), (e.right, e.left)):
            if _is_trig(v):
                inner = certify_limit(u, at)
                if inner.kind == CERTIFIED and inner.value == 0:
                    return LimitVerdict(CERTIFIED, Fraction(0), ("R1",) + inner.certificate,
                                        f"squeeze: |{v.name}|≤1",
                                        {"factor": print_expr(u), "bounded": print_expr(v)})
    # R2: Taylor-model quotient, then plain continuity
    q = _as_quotient(e)
    if q is not None:
        info = _quotient_enclosure(*q, at)
        if info is not None:
            return _certified(info, "R2", "Taylor-model quotient")
    info = _continuous_enclosure(e, at)
    if info is not None:
        return _certified(info, "R2", "Taylor model, continuous at 0")
    # R4: sin(c/x), cos(c/x)
    if _is_trig(e):
        v = _oscillation(e, at)
        if v is not None:
            return v
    # R5
    return numeric_probe(e, at)
