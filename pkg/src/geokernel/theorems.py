"""The three-congruent-circles theorem and the rhombus lemma behind it.

Three congruent circles through a common point O meet pairwise again in
three points; the circle through those is congruent to the first three.
With O at the origin the second intersection of the circles about A and B
is A + B, which is why everything stays rational when O, A, B, C are.
"""

from __future__ import annotations

import json
import random
from math import isqrt
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from . import geom
from .construct.evaluate import evaluate, reported
from .construct.program import ConstructionProgram, Ref, Step, format_number
from .errors import DegenerateConfig, NotCongruent, NotIntersecting, ShapeMismatch
from .numeric.exact import ExactScalar
from .numeric.modes import Exact, format_decimal, round_display

VERIFIED_EXACT = "VerifiedExact"
VERIFIED_WITHIN = "VerifiedWithin"
FALSIFIED = "Falsified"
DEGENERATE = "Degenerate"
VERDICT_SCHEMA = "verdict/1"
DEFAULT_TOLERANCE = 0.25


def _text(v):
    if isinstance(v, geom.Point):
        return f"({_text(v.x)}, {_text(v.y)})"
    if isinstance(v, (list, tuple)):
        return [_text(x) for x in v]
    if isinstance(v, Decimal):
        return format_decimal(v)
    if isinstance(v, Fraction):
        return format_number(v)
    return str(v)


@dataclass(frozen=True)
class Verdict:
    outcome: str
    tolerance: object = None
    residual: object = None
    reason: str = ""
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def verified(self):
        return self.outcome in (VERIFIED_EXACT, VERIFIED_WITHIN)

    def to_dict(self):
        return {
            "schema": VERDICT_SCHEMA,
            "outcome": self.outcome,
            "tolerance": None if self.tolerance is None else _text(self.tolerance),
            "residual": None if self.residual is None else _text(self.residual),
            "reason": self.reason,
            "evidence": {k: _text(v) for k, v in self.evidence.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def __str__(self):
        if self.outcome == DEGENERATE:
            return f"Degenerate: {self.reason}"
        if self.outcome == VERIFIED_WITHIN:
            return f"VerifiedWithin {_text(self.tolerance)}: {self.reason}"
        return f"{self.outcome}: {self.reason}"


# -- configurations -------------------------------------------------------------

def _rational_sqrt(q):
    q = Fraction(q)
    if q <= 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def glider_offset(r, t):
    """Offset from the center of the parameter-t point of a radius-r circle."""
    if t == geom.GLIDER_INFINITY:
        return -r, Fraction(0)
    t = Fraction(t)
    d = 1 + t * t
    return r * (1 - t * t) / d, r * 2 * t / d


@dataclass(frozen=True)
class TzitzeicaConfig:
    O: tuple
    r_sq: Fraction
    t_A: object
    t_B: object
    t_C: object

    def __post_init__(self):
        object.__setattr__(self, "O", (Fraction(self.O[0]), Fraction(self.O[1])))
        object.__setattr__(self, "r_sq", Fraction(self.r_sq))
        for name in ("t_A", "t_B", "t_C"):
            t = getattr(self, name)
            if t != geom.GLIDER_INFINITY:
                object.__setattr__(self, name, Fraction(t))

    @property
    def radius(self):
        r = _rational_sqrt(self.r_sq)
        if r is None:
            raise ValueError(f"r_sq = {self.r_sq} is not the square of a positive rational")
        return r

    def centers(self):
        r = self.radius
        ox, oy = self.O
        out = []
        for t in (self.t_A, self.t_B, self.t_C):
            dx, dy = glider_offset(r, t)
            out.append((ox + dx, oy + dy))
        return tuple(out)

    def check(self):
        """Raise DegenerateConfig for coincident or antipodal centers."""
        pts = self.centers()
        ox, oy = self.O
        labels = "ABC"
        for i in range(3):
            for j in range(i + 1, 3):
                (xi, yi), (xj, yj) = pts[i], pts[j]
                if (xi, yi) == (xj, yj):
                    raise DegenerateConfig(f"centers {labels[i]} and {labels[j]} coincide")
                if (xi + xj, yi + yj) == (2 * ox, 2 * oy):
                    raise DegenerateConfig(
                        f"centers {labels[i]} and {labels[j]} are antipodal through O; "
                        "their circles are tangent at O")


def random_config(rng=None, r_sq_choices=(1, 4, 25, 49), bound=20, origin=False):
    """An admissible configuration with small-height rational parameters."""
    rng = rng or random.Random()

    def q():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    while True:
        O = (0, 0) if origin else (q(), q())
        cfg = TzitzeicaConfig(O, rng.choice(r_sq_choices), q(), q(), q())
        try:
            cfg.check()
        except DegenerateConfig:
            continue
        return cfg


def _branch_away_from(center1, center2, o):
    # intersect() lists the point left of center1 -> center2 first
    side = (center2[0] - center1[0]) * (o[1] - center1[1]) - (center2[1] - center1[1]) * (o[0] - center1[0])
    return "second" if side > 0 else "first"


def tzitzeica_program(config):
    """Program: O, centers A B C, their circles through O, the second
    intersections P (A,B), N (A,C), M (B,C) and the circle k through them."""
    config.check()
    A, B, C = config.centers()
    O = config.O
    steps = [
        Step("point", "O", "free", O),
        Step("point", "A", "free", A),
        Step("point", "B", "free", B),
        Step("point", "C", "free", C),
        Step("circle", "cA", "circle_through", (Ref("A"), Ref("O"))),
        Step("circle", "cB", "circle_through", (Ref("B"), Ref("O"))),
        Step("circle", "cC", "circle_through", (Ref("C"), Ref("O"))),
        Step("point", "P", "intersect", (Ref("cA"), Ref("cB"), _branch_away_from(A, B, O))),
        Step("point", "N", "intersect", (Ref("cA"), Ref("cC"), _branch_away_from(A, C, O))),
        Step("point", "M", "intersect", (Ref("cB"), Ref("cC"), _branch_away_from(B, C, O))),
        Step("circle", "k", "circumcircle", (Ref("M"), Ref("N"), Ref("P"))),
    ]
    return ConstructionProgram(tuple(steps))


# -- shape recognition ------------------------------------------------------------

@dataclass(frozen=True)
class TzitzeicaShape:
    circles: tuple      # three circle names
    centers: tuple      # their center point names
    common: str         # the shared point
    meets: dict         # frozenset of two circle names -> intersection point name
    circum: str         # circumcircle name


def _on_circle(program, point, circle):
    s = program.step(circle)
    if s.ctor == "circle_through" and s.args[1] == Ref(point):
        return True
    p = program.step(point)
    return p.ctor == "intersect" and Ref(circle) in p.args[:2]


def find_tzitzeica_shape(program):
    """Locate the theorem's objects by constructor pattern, not by name."""
    for k in program.steps:
        if k.ctor != "circumcircle":
            continue
        meets = {}
        for a in k.args:
            p = program.step(a.name)
            if p.ctor != "intersect":
                break
            meets[frozenset((p.args[0].name, p.args[1].name))] = a.name
        else:
            circles = sorted(set().union(*meets)) if len(meets) == 3 else []
            if len(circles) != 3 or any(len(pair) != 2 for pair in meets):
                continue
            if any(program.step(c).ctor not in ("circle", "circle_through") for c in circles):
                continue
            third = set(meets.values())
            for s in program.steps:
                if s.kind != "point" or s.name in third:
                    continue
                if all(_on_circle(program, s.name, c) for c in circles):
                    order = sorted(circles, key=program.index)
                    centers = tuple(program.step(c).args[0].name for c in order)
                    return TzitzeicaShape(tuple(order), centers, s.name, meets, k.name)
    raise ShapeMismatch("no three circles through a common point with their second "
                        "intersections and the circle through those")


# -- verdicts ---------------------------------------------------------------------

def check_tzitzeica(program, mode=Exact, tolerance=DEFAULT_TOLERANCE, trace=None):
    """Compare the outer circle's r² with the common r² of the three circles."""
    shape = find_tzitzeica_shape(program)
    trace = trace if trace is not None else evaluate(program, mode)
    involved = (*shape.centers, shape.common, *shape.circles, *shape.meets.values(), shape.circum)
    for name in sorted(involved, key=program.index):
        r = trace[name]
        if not r.ok:
            return Verdict(DEGENERATE, reason=f"{name}: {r.status}",
                           evidence={"failed": name, "status": r.status})
    circles = [trace[c].value for c in shape.circles]
    circum = trace[shape.circum].value
    evidence = {name: trace[name].value for name in
                sorted(shape.meets.values(), key=program.index)}
    evidence["circum_center"] = circum.center
    if mode.is_exact:
        r_sq = circles[0].radius_sq
        evidence.update(r_sq=r_sq, circum_r_sq=circum.radius_sq)
        residual = circum.radius_sq - r_sq
        others = [c.radius_sq - r_sq for c in circles[1:]]
        evidence["residual"] = residual
        if all(d.sign() == 0 for d in others) and residual.sign() == 0:
            return Verdict(VERIFIED_EXACT, residual=residual,
                           reason=f"circum r² = {circum.radius_sq} = r²", evidence=evidence)
        if any(d.sign() != 0 for d in others):
            why = "the three circles are not congruent"
        else:
            why = f"circum r² = {circum.radius_sq} ≠ {r_sq}"
        return Verdict(FALSIFIED, residual=residual, reason=why, evidence=evidence)
    # approximate modes: compare the numbers as reported
    radii = [dict(reported(trace[c], mode))["r_sq"] for c in shape.circles]
    circum_r = dict(reported(trace[shape.circum], mode))["r_sq"]
    r_sq = radii[0]
    residual = max(abs(x - r_sq) for x in radii[1:] + [circum_r])
    evidence.update(r_sq=r_sq, circle_r_sq=radii, circum_r_sq=circum_r, residual=residual)
    if residual <= Decimal(repr(float(tolerance))):
        return Verdict(VERIFIED_WITHIN, tolerance=tolerance, residual=residual,
                       reason=f"residual ≤ {format_decimal(residual)}",
                       evidence=evidence)
    return Verdict(FALSIFIED, tolerance=tolerance, residual=residual,
                   reason=f"residual {format_decimal(residual)} > {tolerance}", evidence=evidence)


def tzitzeica_check(program, trace, mode):
    """Sweep predicate: the theorem holds at this step."""
    try:
        return check_tzitzeica(program, mode, trace=trace).verified
    except ShapeMismatch:
        return False


def check_rhombus_lemma(c1, c2, tolerance=1e-9):
    """Centers and intersections of two congruent circles form a rhombus."""
    if not geom.congruent_circles(c1, c2):
        if isinstance(c1.radius_sq, ExactScalar) or abs(c1.radius_sq - c2.radius_sq) > tolerance:
            raise NotCongruent("the circles have different radii")
    pts = geom.circle_circle_intersections(c1, c2)
    if len(pts) != 2:
        raise NotIntersecting("the circles do not meet in two points"
                              if not pts else "the circles are tangent")
    p, q = pts
    quad = (c1.center, p, c2.center, q)
    sides = [geom.dist_sq(quad[i], quad[(i + 1) % 4]) for i in range(4)]
    evidence = {"vertices": list(quad), "sides_sq": sides}
    if isinstance(sides[0], ExactScalar):
        evidence["sides"] = [s.sqrt() for s in sides]
        if geom.is_rhombus(*quad):
            return Verdict(VERIFIED_EXACT, residual=ExactScalar(0),
                           reason=f"all four sides² = {sides[0]}", evidence=evidence)
        return Verdict(FALSIFIED, reason="unequal sides", evidence=evidence)
    residual = max(abs(s - c1.radius_sq) for s in sides)
    evidence["sides"] = [s ** 0.5 for s in sides]
    limit = tolerance * max(1.0, abs(c1.radius_sq))
    if residual <= limit:
        return Verdict(VERIFIED_WITHIN, tolerance=limit, residual=residual,
                       reason=f"sides² agree within {residual:.3g}", evidence=evidence)
    return Verdict(FALSIFIED, tolerance=limit, residual=residual,
                   reason=f"side residual {residual:.6g}", evidence=evidence)


def rhombus_check(program, trace, mode):
    """Sweep predicate: every intersected congruent pair passes the lemma."""
    seen = False
    for s in program.steps:
        if s.ctor != "intersect":
            continue
        a, b = trace[s.args[0].name], trace[s.args[1].name]
        if not (a.ok and b.ok):
            return False
        try:
            ok = check_rhombus_lemma(a.value, b.value).verified
        except NotCongruent:
            continue
        except NotIntersecting:
            return False
        seen = True
        if not ok:
            return False
    return seen


def check_rhombus(program, mode=Exact, tolerance=1e-9):
    """Rhombus lemma for the first intersection step of a program."""
    step = next((s for s in program.steps if s.ctor == "intersect"), None)
    if step is None:
        raise ShapeMismatch("no intersection of two circles in the program")
    trace = evaluate(program, mode)
    names = [a.name for a in step.args[:2]]
    for n in names:
        if not trace[n].ok:
            return Verdict(DEGENERATE, reason=f"{n}: {trace[n].status}",
                           evidence={"failed": n, "status": trace[n].status})
    try:
        verdict = check_rhombus_lemma(trace[names[0]].value, trace[names[1]].value, tolerance)
    except NotIntersecting as exc:
        return Verdict(DEGENERATE, reason=str(exc), evidence={"circles": names})
    except NotCongruent as exc:
        return Verdict(FALSIFIED, reason=str(exc), evidence={"circles": names})
    return Verdict(verdict.outcome, verdict.tolerance, verdict.residual, verdict.reason,
                   dict(verdict.evidence, circles=names))


# -- parallelograms -----------------------------------------------------------------

@dataclass(frozen=True)
class SidePair:
    center_side: tuple
    outer_side: tuple
    center_length: object
    outer_length: object
    difference: object
    center_segment: str = None
    outer_segment: str = None

    def label(self, which):
        ends = self.center_side if which == "center" else self.outer_side
        seg = self.center_segment if which == "center" else self.outer_segment
        return f"{ends[0]}{ends[1]}" + (f" ({seg})" if seg else "")


def _segment_named(program, p, q):
    for s in program.steps:
        if s.ctor == "segment" and {a.name for a in s.args} == {p, q}:
            return s.name
    return None


def parallelogram_side_report(program, mode=Exact):
    """Pair each side XY of the center triangle with the outer side joining
    the intersections that involve X and Y with the third circle."""
    shape = find_tzitzeica_shape(program)
    trace = evaluate(program, mode)
    for name in (*shape.centers, *shape.meets.values()):
        if not trace[name].ok:
            raise ShapeMismatch(f"{name} is undefined ({trace[name].status})")
    circles, centers = shape.circles, shape.centers
    rows = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        k = 3 - i - j
        u = shape.meets[frozenset((circles[i], circles[k]))]
        v = shape.meets[frozenset((circles[j], circles[k]))]
        cl = geom.ssqrt(geom.dist_sq(trace[centers[i]].value, trace[centers[j]].value))
        ol = geom.ssqrt(geom.dist_sq(trace[u].value, trace[v].value))
        if mode.is_exact:
            diff = cl - ol
        else:
            cl, ol = round_display(cl, mode.decimals), round_display(ol, mode.decimals)
            diff = abs(cl - ol)
        rows.append(SidePair((centers[i], centers[j]), (u, v), cl, ol, diff,
                             _segment_named(program, centers[i], centers[j]),
                             _segment_named(program, u, v)))
    return tuple(rows)


def format_side_report(rows):
    out = []
    for r in rows:
        out.append(f"{r.label('center')} = {_text(r.center_length)}  vs  "
                   f"{r.label('outer')} = {_text(r.outer_length)}  difference {_text(r.difference)}")
    return "\n".join(out) + "\n"
