"""Scripted dragging: move one free point along a path and re-run checks."""

from __future__ import annotations

import contextvars
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import NotFree, ProgramSyntaxError, UnknownObject
from ..numeric.modes import Exact
from .evaluate import OK, evaluate
from .program import format_number, parse_number


@dataclass(frozen=True)
class LinePath:
    start: tuple
    end: tuple

    def at(self, s):
        (x0, y0), (x1, y1) = self.start, self.end
        return x0 + s * (x1 - x0), y0 + s * (y1 - y0)

    def __str__(self):
        return f"line:{_pair(self.start)}:{_pair(self.end)}"


@dataclass(frozen=True)
class ArcPath:
    """Rational points of a circle, tan-half-angle parameter from t0 to t1."""

    center: tuple
    radius: Fraction
    t0: Fraction
    t1: Fraction

    def at(self, s):
        t = self.t0 + s * (self.t1 - self.t0)
        d = 1 + t * t
        cx, cy = self.center
        return cx + self.radius * (1 - t * t) / d, cy + self.radius * 2 * t / d

    def __str__(self):
        f = format_number
        return f"arc:{_pair(self.center)}:{f(self.radius)}:{f(self.t0)}:{f(self.t1)}"


def _pair(p):
    return f"{format_number(p[0])},{format_number(p[1])}"


def _num(text, spec):
    try:
        return parse_number(text.strip())
    except (ValueError, ArithmeticError, ProgramSyntaxError) as exc:
        raise ValueError(f"bad number {text!r} in path {spec!r}") from exc


def parse_path(spec):
    """``line:x0,y0:x1,y1`` or ``arc:cx,cy:r:t0:t1`` with rational data."""
    parts = spec.split(":")
    shape = parts[0].strip()
    if shape == "line" and len(parts) == 3:
        a, b = (tuple(_num(v, spec) for v in p.split(",")) for p in parts[1:])
        if len(a) == 2 and len(b) == 2:
            return LinePath(a, b)
    elif shape == "arc" and len(parts) == 5:
        c = tuple(_num(v, spec) for v in parts[1].split(","))
        if len(c) == 2:
            r = _num(parts[2], spec)
            if r <= 0:
                raise ValueError(f"arc radius must be positive in {spec!r}")
            return ArcPath(c, r, _num(parts[3], spec), _num(parts[4], spec))
    raise ValueError(f"bad path spec {spec!r}; use line:x0,y0:x1,y1 or arc:cx,cy:r:t0:t1")


def path_parameters(steps):
    if steps < 1:
        raise ValueError("a sweep needs at least one step")
    if steps == 1:
        return (Fraction(0),)
    return tuple(Fraction(i, steps - 1) for i in range(steps))


@dataclass(frozen=True)
class SweepStep:
    index: int
    param: Fraction
    point: tuple
    status: str
    checks: dict = field(default_factory=dict)
    trace: object = field(default=None, compare=False, repr=False)

    @property
    def passed(self):
        return all(self.checks.values())


@dataclass(frozen=True)
class SweepReport:
    target: str
    path: object
    mode: object
    check_names: tuple
    steps: tuple

    def passes(self, name):
        return sum(1 for s in self.steps if s.checks[name])

    @property
    def all_passed(self):
        return all(s.passed for s in self.steps)

    def summary(self):
        n = len(self.steps)
        return {name: (self.passes(name), n) for name in self.check_names}

    def format(self):
        f = format_number
        lines = [f"sweep {self.target} along {self.path} ({len(self.steps)} steps, {self.mode.label()})"]
        for s in self.steps:
            marks = " ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in s.checks.items())
            lines.append(f"{s.index:>4}  s={f(s.param)}  {self.target}=({f(s.point[0])}, {f(s.point[1])})"
                         f"  {s.status}  {marks}")
        for name, (k, n) in self.summary().items():
            lines.append(f"{name}: {k}/{n} passed")
        return "\n".join(lines) + "\n"


def _defined(program, trace, mode):
    return trace.first_failure() is None


def _check_registry():
    from .. import theorems
    return {
        "defined": _defined,
        "tzitzeica": theorems.tzitzeica_check,
        "congruence": theorems.tzitzeica_check,
        "rhombus": theorems.rhombus_check,
    }


CHECK_NAMES = ("defined", "tzitzeica", "congruence", "rhombus")


def perturb_sweep(program, target, path, steps, checks=("defined",), mode=Exact, workers=1):
    """Re-evaluate ``program`` with ``target`` placed at evenly spaced path points.

    Steps are independent; with ``workers > 1`` they run on a thread pool
    and the report is still ordered by step index.
    """
    if target not in program.names:
        raise UnknownObject(f"no object named {target!r}")
    if program.step(target).ctor != "free":
        raise NotFree(f"{target!r} is not a free point")
    if isinstance(path, str):
        path = parse_path(path)
    registry = _check_registry()
    unknown = [c for c in checks if c not in registry]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    params = path_parameters(steps)

    def run(i):
        s = params[i]
        x, y = path.at(s)
        moved = program.with_free_point(target, x, y)
        trace = evaluate(moved, mode)
        results = {c: bool(registry[c](moved, trace, mode)) for c in checks}
        bad = trace.first_failure()
        return SweepStep(i, s, (x, y), OK if bad is None else bad.status, results, trace)

    if workers > 1:
        ctx = contextvars.copy_context()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(lambda i: ctx.copy().run(run, i), range(len(params))))
    else:
        done = [run(i) for i in range(len(params))]
    return SweepReport(target, path, mode, tuple(checks), tuple(done))
