"""SVG 1.1 output for plots and evaluated constructions.

Output is deterministic: elements follow the input order and every number
is written with six decimals, so files can be compared byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .analysis.plot import BOX, LINE, PlotData
from .construct.evaluate import EvalTrace


@dataclass(frozen=True)
class SvgStyle:
    width: int = 640
    height: int = 480
    margin: int = 24
    stroke: str = "#1f4e9c"
    circle_stroke: str = "#444444"
    point_color: str = "#b00020"
    box_fill: str = "#e08000"
    box_opacity: float = 0.35
    axis_color: str = "#999999"
    stroke_width: float = 1.5
    point_size: float = 3.0
    font_size: int = 12


def _num(v):
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _View:
    """World-to-pixel map with a uniform or independent scale, y pointing up."""

    def __init__(self, x0, x1, y0, y1, style, uniform):
        if not x1 > x0:
            x0, x1 = x0 - 1, x1 + 1
        if not y1 > y0:
            y0, y1 = y0 - 1, y1 + 1
        w = style.width - 2 * style.margin
        h = style.height - 2 * style.margin
        sx, sy = w / (x1 - x0), h / (y1 - y0)
        if uniform:
            sx = sy = min(sx, sy)
        self.x0, self.y0, self.y1 = x0, y0, y1
        self.sx, self.sy = sx, sy
        self.m = style.margin
        self.h = style.height

    def x(self, v):
        return self.m + (v - self.x0) * self.sx

    def y(self, v):
        return self.h - self.m - (v - self.y0) * self.sy

    def clamp_y(self, v):
        return min(max(v, self.y0), self.y1)


def _document(style, body):
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{style.width}" height="{style.height}" '
            f'viewBox="0 0 {style.width} {style.height}">\n')
    return head + "".join(f"  {line}\n" for line in body) + "</svg>\n"


# -- plots --------------------------------------------------------------------------

def _plot_window(plot):
    if plot.y_clip is not None:
        return plot.y_clip.lo, plot.y_clip.hi
    lows = [c.lo for c in plot.cells if c.kind in (LINE, BOX) and math.isfinite(c.lo)]
    highs = [c.hi for c in plot.cells if c.kind in (LINE, BOX) and math.isfinite(c.hi)]
    if not lows or not highs:
        return -1.0, 1.0
    return min(lows), max(highs)


def plot_svg(plot, style=SvgStyle()):
    y0, y1 = _plot_window(plot)
    view = _View(plot.domain.lo, plot.domain.hi, y0, y1, style, uniform=False)
    body = [f"<title>{escape(plot.expr)}</title>"]
    if y0 <= 0 <= y1:
        body.append(f'<line x1="{_num(view.x(plot.domain.lo))}" y1="{_num(view.y(0))}" '
                    f'x2="{_num(view.x(plot.domain.hi))}" y2="{_num(view.y(0))}" '
                    f'stroke="{style.axis_color}" stroke-width="1"/>')
    if plot.domain.lo <= 0 <= plot.domain.hi:
        body.append(f'<line x1="{_num(view.x(0))}" y1="{_num(view.y(y0))}" '
                    f'x2="{_num(view.x(0))}" y2="{_num(view.y(y1))}" '
                    f'stroke="{style.axis_color}" stroke-width="1"/>')
    for line in plot.polylines:
        pts = " ".join(f"{_num(view.x(x))},{_num(view.y(view.clamp_y(y)))}" for x, y in line)
        body.append(f'<polyline points="{pts}" fill="none" stroke="{style.stroke}" '
                    f'stroke-width="{style.stroke_width}"/>')
    for b in plot.boxes:
        lo, hi = view.clamp_y(b.lo), view.clamp_y(b.hi)
        body.append(f'<rect x="{_num(view.x(b.x0))}" y="{_num(view.y(hi))}" '
                    f'width="{_num((b.x1 - b.x0) * view.sx)}" height="{_num((hi - lo) * view.sy)}" '
                    f'fill="{style.box_fill}" fill-opacity="{style.box_opacity}" stroke="none"/>')
    return _document(style, body)


# -- constructions --------------------------------------------------------------------

def _extent(kind, v):
    if kind == "point":
        x, y = v.as_floats()
        return [(x, y)]
    if kind == "circle":
        cx, cy = v.center.as_floats()
        r = math.sqrt(max(float(v.radius_sq), 0.0))
        return [(cx - r, cy - r), (cx + r, cy + r)]
    if kind == "segment":
        return [v.p.as_floats(), v.q.as_floats()]
    if kind == "polygon":
        return [p.as_floats() for p in v.vertices]
    return []


def trace_svg(trace, style=SvgStyle()):
    drawn = [r for r in trace if r.ok and r.kind != "number"]
    pts = [p for r in drawn for p in _extent(r.kind, r.value)]
    if pts:
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        view = _View(min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad, style, uniform=True)
    else:
        view = _View(-1.0, 1.0, -1.0, 1.0, style, uniform=True)
    shapes, marks = [], []
    for r in drawn:
        v = r.value
        if r.kind == "circle":
            cx, cy = v.center.as_floats()
            rad = math.sqrt(max(float(v.radius_sq), 0.0)) * view.sx
            shapes.append(f'<circle id="{escape(r.name)}" cx="{_num(view.x(cx))}" cy="{_num(view.y(cy))}" '
                          f'r="{_num(rad)}" fill="none" stroke="{style.circle_stroke}" '
                          f'stroke-width="{style.stroke_width}"/>')
        elif r.kind == "segment":
            (x1, y1), (x2, y2) = v.p.as_floats(), v.q.as_floats()
            shapes.append(f'<line id="{escape(r.name)}" x1="{_num(view.x(x1))}" y1="{_num(view.y(y1))}" '
                          f'x2="{_num(view.x(x2))}" y2="{_num(view.y(y2))}" stroke="{style.stroke}" '
                          f'stroke-width="{style.stroke_width}"/>')
        elif r.kind == "polygon":
            pts = " ".join(f"{_num(view.x(x))},{_num(view.y(y))}"
                           for x, y in (p.as_floats() for p in v.vertices))
            shapes.append(f'<polygon id="{escape(r.name)}" points="{pts}" fill="{style.stroke}" '
                          f'fill-opacity="0.1" stroke="{style.stroke}" stroke-width="1"/>')
        elif r.kind == "point":
            x, y = v.as_floats()
            px, py, s = view.x(x), view.y(y), style.point_size
            marks.append(f'<path id="{escape(r.name)}" d="M {_num(px - s)} {_num(py)} L {_num(px + s)} {_num(py)} '
                         f'M {_num(px)} {_num(py - s)} L {_num(px)} {_num(py + s)}" '
                         f'stroke="{style.point_color}" stroke-width="1.5"/>')
            marks.append(f'<text x="{_num(px + s + 2)}" y="{_num(py - s - 2)}" '
                         f'font-family="sans-serif" font-size="{style.font_size}" '
                         f'fill="{style.point_color}">{escape(r.name)}</text>')
    # points on top of the figure they label
    return _document(style, shapes + marks)


def emit_svg(obj, style=SvgStyle()):
    """SVG document for a :class:`PlotData` or an :class:`EvalTrace`."""
    if isinstance(obj, PlotData):
        return plot_svg(obj, style)
    if isinstance(obj, EvalTrace):
        return trace_svg(obj, style)
    raise TypeError(f"cannot draw {type(obj).__name__}")
