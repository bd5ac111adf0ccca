"""Evaluate a construction program under a scalar mode."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .. import geom
from ..errors import EmptyIntersection, GeoError, InternalLimitExceeded
from ..geom import Point, Polygon, Segment
from ..numeric.modes import Exact, ScalarMode, round_display
from .program import Ref

OK = "ok"


@dataclass(frozen=True)
class ObjectResult:
    name: str
    kind: str
    free: bool
    status: str = OK
    value: object = None
    reason: str = ""

    @property
    def ok(self):
        return self.status == OK


@dataclass(frozen=True)
class EvalTrace:
    mode: ScalarMode
    results: tuple

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def value(self, name):
        return self[name].value

    @property
    def failures(self):
        return tuple(r for r in self.results if not r.ok)

    def first_failure(self):
        f = self.failures
        return f[0] if f else None


def components(kind, value):
    """Numeric quantities of an evaluated object as (label, scalar) pairs."""
    if kind == "point":
        return (("x", value.x), ("y", value.y))
    if kind == "circle":
        return (("cx", value.center.x), ("cy", value.center.y), ("r_sq", value.radius_sq))
    if kind == "segment":
        return (("length", value.length),)
    if kind == "polygon":
        return (("area", value.area),)
    if kind == "number":
        return (("value", value),)
    raise ValueError(f"unknown kind {kind!r}")


def reported(result, mode):
    """The numbers a user sees for an object: rounded Decimals outside exact mode."""
    comps = components(result.kind, result.value)
    if mode.is_exact:
        return comps
    return tuple((label, round_display(float(v), mode.decimals)) for label, v in comps)


class _Evaluator:
    def __init__(self, mode):
        self.mode = mode
        self.values = {}

    def lit(self, q):
        return self.mode.literal(q)

    def ref(self, a):
        return self.values[a.name]

    def radius_sq(self, a):
        r = self.ref(a) if isinstance(a, Ref) else self.lit(a)
        return r * r

    def run(self, step):
        a = step.args
        c = step.ctor
        if c == "free":
            return Point(self.lit(a[0]), self.lit(a[1]))
        if c == "value":
            return self.lit(a[0])
        if c == "circle":
            return geom.make_circle(self.ref(a[0]), self.radius_sq(a[1]))
        if c == "circle_through":
            return geom.circle_through(self.ref(a[0]), self.ref(a[1]))
        if c == "circumcircle":
            return geom.circumcircle(*(self.ref(x) for x in a))
        if c == "intersect":
            pts = geom.circle_circle_intersections(self.ref(a[0]), self.ref(a[1]))
            if not pts:
                raise EmptyIntersection(f"{a[0]} and {a[1]} do not meet")
            return pts[0] if a[2] == "first" or len(pts) == 1 else pts[1]
        if c == "glider":
            t = a[1] if a[1] == geom.GLIDER_INFINITY else self.glider_param(a[1])
            return geom.point_on_circle(self.ref(a[0]), t)
        if c == "midpoint":
            return geom.midpoint(self.ref(a[0]), self.ref(a[1]))
        if c == "segment":
            seg = Segment(self.ref(a[0]), self.ref(a[1]))
            seg.length  # surfaces sqrt failures at evaluation time
            return seg
        if c == "polygon":
            return Polygon(tuple(self.ref(x) for x in a))
        raise ValueError(f"unknown constructor {c!r}")

    def glider_param(self, q):
        if self.mode.snaps:
            return Decimal(round_display(float(q), self.mode.decimals))
        return q


def evaluate(program, mode=Exact):
    """Evaluate every step in order.

    Failures never abort the run: the failing object records its status and
    every object depending on it inherits that status.  Only internal
    resource limits propagate as exceptions.
    """
    ev = _Evaluator(mode)
    status = {}
    results = []
    for step in program.steps:
        bad = next((r for r in step.refs if status[r] != OK), None)
        if bad is not None:
            st = status[bad]
            res = ObjectResult(step.name, step.kind, step.is_free, st, None,
                               f"depends on {bad}")
        else:
            try:
                value = ev.run(step)
                if step.kind == "polygon":
                    value.area
                res = ObjectResult(step.name, step.kind, step.is_free, OK, value)
                ev.values[step.name] = value
            except InternalLimitExceeded:
                raise
            except GeoError as exc:
                res = ObjectResult(step.name, step.kind, step.is_free, exc.status, None, str(exc))
            except ZeroDivisionError as exc:
                res = ObjectResult(step.name, step.kind, step.is_free, "DivisionByZero", None,
                                   str(exc))
            except (ValueError, OverflowError) as exc:
                res = ObjectResult(step.name, step.kind, step.is_free, "DomainViolation", None,
                                   str(exc))
        status[step.name] = res.status
        results.append(res)
    return EvalTrace(mode, tuple(results))


__all__ = ["EvalTrace", "ObjectResult", "evaluate", "components", "reported", "OK"]
