"""Adaptive plotting by interval bisection.

Every cell of the final subdivision is one of three things:

* ``line``: the function is defined on the whole cell and its enclosure is
  at most ``tol`` high, so the chord between the endpoint values is drawn;
* ``gap``: the function is undefined on the cell, or unbounded next to a
  point where it is undefined;
* ``box``: the cell reached ``max_depth`` without resolving; its enclosure
  is drawn as a box instead of pretending to know the curve.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DenominatorMayVanish, DomainViolation, UnsupportedNode
from ..numeric.interval import Interval, interval_div
from .enclose import enclose, mean_value_enclosure
from .expr import Div, eval_point, print_expr
from .taylor import ZERO, TaylorModel, taylor_model

PLOT_SCHEMA = "plot/1"
LINE, GAP, BOX = "line", "gap", "box"
REMOVABLE_DEGREE = 4


@dataclass(frozen=True)
class Cell:
    kind: str
    x0: float
    x1: float
    lo: float = None
    hi: float = None

    @property
    def height(self):
        return self.hi - self.lo

    @property
    def center(self):
        return self.x0 + (self.x1 - self.x0) / 2


@dataclass(frozen=True)
class PlotData:
    expr: str
    domain: Interval
    y_clip: Interval
    tol: float
    max_depth: int
    cells: tuple
    polylines: tuple
    gaps: tuple

    @property
    def boxes(self):
        return tuple(c for c in self.cells if c.kind == BOX)

    def to_dict(self):
        return {
            "schema": PLOT_SCHEMA,
            "expr": self.expr,
            "domain": [self.domain.lo, self.domain.hi],
            "y_clip": None if self.y_clip is None else [self.y_clip.lo, self.y_clip.hi],
            "tol": self.tol,
            "max_depth": self.max_depth,
            "polylines": [[list(p) for p in line] for line in self.polylines],
            "gaps": [list(g) for g in self.gaps],
            "boxes": [[b.x0, b.x1, _finite(b.lo), _finite(b.hi)] for b in self.boxes],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _finite(v):
    return v if math.isfinite(v) else ("inf" if v > 0 else "-inf")


def _tm_enclosure(e, a, b):
    mid = Fraction(a) + (Fraction(b) - Fraction(a)) / 2
    try:
        return taylor_model(e, mid, 2, Interval(a, b)).range()
    except (DenominatorMayVanish, DomainViolation, UnsupportedNode, ValueError,
            OverflowError, ZeroDivisionError):
        return None


def _simplest_dyadic(lo, hi):
    """The point of [lo, hi] with the shortest binary expansion."""
    if lo <= 0 <= hi:
        return 0.0
    sign = 1.0 if lo > 0 else -1.0
    lo, hi = sorted((abs(lo), abs(hi)))
    scale = 2.0 ** math.floor(math.log2(hi))
    while True:
        q = math.ceil(lo / scale) * scale
        if q <= hi:
            return sign * q
        scale /= 2


def _removable_enclosure(e, a, b, reach=4):
    """Quotient u/w whose models about a nearby simple point share a zero.

    Cancelling the common power of h there encloses functions like sin(x)/x
    right next to their removable singularity, where interval dependency
    otherwise loses everything.
    """
    if not isinstance(e, Div):
        return None
    w = b - a
    z = _simplest_dyadic(a - reach * w, b + reach * w)
    D = Interval(min(a, z), max(b, z))
    try:
        tu = taylor_model(e.left, Fraction(z), REMOVABLE_DEGREE, D)
        tw = taylor_model(e.right, Fraction(z), REMOVABLE_DEGREE, D)
        if tu.degree != tw.degree:
            return None
        j = 0
        while j < tu.degree and tu.coeffs[j] == ZERO and tw.coeffs[j] == ZERO:
            j += 1
        if j == 0:
            return None
        su, sw = tu.shifted(j), tw.shifted(j)
        # the models hold on D; only [a, b] matters for the range
        su = TaylorModel(su.center, su.degree, su.coeffs, su.factor, Interval(a, b))
        sw = TaylorModel(sw.center, sw.degree, sw.coeffs, sw.factor, Interval(a, b))
        den = sw.range()
        if den.contains_zero():
            return None
        return interval_div(su.range(), den)
    except (DenominatorMayVanish, DomainViolation, UnsupportedNode, ValueError,
            OverflowError, ZeroDivisionError):
        return None


def _tighten(enc, other):
    if other is None or not other.is_bounded():
        return enc
    if not enc.is_bounded():
        return other
    both = enc.intersect(other)
    return both if both is not None else enc


def _outside(enc, clip):
    return clip is not None and enc.is_bounded() and (enc.lo > clip.hi or enc.hi < clip.lo)


def adaptive_plot(e, domain, y_clip=None, tol=1e-3, max_depth=24):
    """Subdivide ``domain`` until every cell is a line, a gap or a box."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    domain = domain.floats()
    if not domain.width > 0:
        raise ValueError("the plot domain must have positive width")
    cells = []

    def visit(a, b, depth):
        enc, partial = enclose(e, Interval(a, b))
        if enc is None:
            cells.append(Cell(GAP, a, b))
            return
        if not partial and (not enc.is_bounded() or enc.width > tol):
            enc = _tighten(enc, mean_value_enclosure(e, Interval(a, b)))
        mid = a + (b - a) / 2
        last = depth >= max_depth or not (a < mid < b)
        if last and not partial and (not enc.is_bounded() or enc.width > tol):
            enc = _tighten(enc, _tm_enclosure(e, a, b))
            if enc.width > tol:
                enc = _tighten(enc, _removable_enclosure(e, a, b))
        if not partial and enc.is_bounded() and enc.width <= tol:
            cells.append(Cell(LINE, a, b, enc.lo, enc.hi))
            return
        if not partial and _outside(enc, y_clip):
            cells.append(Cell(BOX, a, b, enc.lo, enc.hi))
            return
        if last:
            if partial and not enc.is_bounded():
                cells.append(Cell(GAP, a, b))
            else:
                cells.append(Cell(BOX, a, b, enc.lo, enc.hi))
            return
        visit(a, mid, depth + 1)
        visit(mid, b, depth + 1)

    visit(domain.lo, domain.hi, 0)
    cells = _merge_adjacent_gaps(cells)
    return PlotData(print_expr(e), domain, y_clip, tol, max_depth, tuple(cells),
                    _polylines(e, cells), _merged_gaps(cells))


def _merge_adjacent_gaps(cells):
    """Neighbouring gap cells become one cell: one marker per undefined stretch."""
    out = []
    for c in cells:
        if c.kind == GAP and out and out[-1].kind == GAP and out[-1].x1 == c.x0:
            out[-1] = Cell(GAP, out[-1].x0, c.x1)
        else:
            out.append(c)
    return out


def _polylines(e, cells):
    lines = []
    current = []
    for c in cells:
        if c.kind != LINE:
            if current:
                lines.append(tuple(current))
            current = []
            continue
        if not current:
            current.append((c.x0, eval_point(e, c.x0)))
        current.append((c.x1, eval_point(e, c.x1)))
    if current:
        lines.append(tuple(current))
    return tuple(lines)


def _merged_gaps(cells):
    gaps = []
    for c in cells:
        if c.kind != GAP:
            continue
        if gaps and gaps[-1][1] == c.x0:
            gaps[-1] = (gaps[-1][0], c.x1)
        else:
            gaps.append((c.x0, c.x1))
    return tuple(gaps)
