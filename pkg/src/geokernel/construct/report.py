"""Protocol listings, deviation tables and the ``trace/1`` JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from ..numeric.exact import ExactScalar
from ..numeric.modes import DisplayRounded, Exact, format_decimal, round_display, to_fraction
from .evaluate import components, evaluate

TRACE_SCHEMA = "trace/1"


def round_exact(v, k):
    """k-decimal rounding (halves away from zero) of an exact value."""
    if isinstance(v, ExactScalar) and v.is_rational():
        q = v.as_fraction()
        d = Decimal(q.numerator) / Decimal(q.denominator) if q.denominator == 1 else None
        if d is None:
            scaled = q * 10 ** k
            n = abs(scaled)
            whole = n.numerator // n.denominator
            if (n - whole) * 2 >= 1:
                whole += 1
            d = Decimal(whole).scaleb(-k) * (1 if q >= 0 else -1)
        r = d.quantize(Decimal(1).scaleb(-k), rounding=ROUND_HALF_UP)
        return abs(r) if r == 0 else r
    return round_display(float(v), k)


def _is_k_decimal(v, k):
    if not isinstance(v, ExactScalar) or not v.is_rational():
        return False
    return (v.as_fraction() * 10 ** k).denominator == 1


def display_number(v, mode):
    """(shown, exact-or-None) strings for one scalar under a mode."""
    k = mode.decimals
    if mode.is_exact:
        shown = format_decimal(round_exact(v, k))
        return shown, (None if _is_k_decimal(v, k) else str(v))
    return format_decimal(round_display(float(v), k)), None


def _axis(var, shown):
    if shown == "0":
        return f"{var}²"
    if shown.startswith("-"):
        return f"({var} + {shown[1:]})²"
    return f"({var} - {shown})²"


def format_object(result, mode):
    if not result.ok:
        return f"{result.name}: undefined ({result.status})"
    nums = [display_number(v, mode) for _, v in components(result.kind, result.value)]
    shown = [s for s, _ in nums]
    exact = [e if e is not None else s for s, e in nums]
    has_exact = any(e is not None for _, e in nums)
    if result.kind == "point":
        line = f"{result.name} = ({shown[0]}, {shown[1]})"
        extra = f"({exact[0]}, {exact[1]})"
    elif result.kind == "circle":
        line = f"{result.name}: {_axis('x', shown[0])} + {_axis('y', shown[1])} = {shown[2]}"
        extra = f"center ({exact[0]}, {exact[1]}), r² = {exact[2]}"
    else:
        line = f"{result.name} = {shown[0]}"
        extra = exact[0]
    if has_exact:
        line += f"  [exact: {extra}]"
    return line


def protocol_report(trace):
    """Free objects, then dependent ones, one line each in step order."""
    free = [format_object(r, trace.mode) for r in trace if r.free]
    dependent = [format_object(r, trace.mode) for r in trace if not r.free]
    lines = ["Free objects", *free, "Dependent objects", *dependent]
    return "\n".join(lines) + "\n"


# -- deviation ------------------------------------------------------------------

@dataclass(frozen=True)
class DeviationRow:
    name: str
    kind: str
    component: str
    status: str
    exact: object = None
    rounded: Decimal = None
    deviation: Fraction = None


@dataclass(frozen=True)
class DeviationReport:
    decimals: int
    rows: tuple
    exact_trace: object
    rounded_trace: object

    @property
    def max_deviation(self):
        devs = [r.deviation for r in self.rows if r.deviation is not None]
        return max(devs) if devs else Fraction(0)

    @property
    def worst(self):
        rows = [r for r in self.rows if r.deviation is not None]
        return max(rows, key=lambda r: r.deviation) if rows else None

    def row(self, name, component):
        for r in self.rows:
            if r.name == name and r.component == component:
                return r
        raise KeyError((name, component))


def deviation_report(program, k=2):
    """Compare an exact evaluation with the k-decimal display pipeline."""
    exact_trace = evaluate(program, Exact)
    rounded_trace = evaluate(program, DisplayRounded(k))
    rows = []
    for ex, rd in zip(exact_trace, rounded_trace):
        if not ex.ok or not rd.ok:
            status = ex.status if not ex.ok else rd.status
            rows.append(DeviationRow(ex.name, ex.kind, "", status))
            continue
        ecomps = components(ex.kind, ex.value)
        rcomps = components(rd.kind, rd.value)
        for (label, ev), (_, rv) in zip(ecomps, rcomps):
            shown = round_display(float(rv), k)
            dev = abs(to_fraction(ev) - Fraction(shown))
            rows.append(DeviationRow(ex.name, ex.kind, label, "ok", ev, shown, dev))
    return DeviationReport(k, tuple(rows), exact_trace, rounded_trace)


def _approx(v, digits=10):
    return f"{float(v):.{digits}g}"


def format_deviation(report):
    out = [f"Deviation of the {report.decimals}-decimal pipeline from exact evaluation",
           f"{'object':<8} {'part':<7} {'exact':>18} {'rounded':>12} {'deviation':>12}"]
    for r in report.rows:
        if r.status != "ok":
            out.append(f"{r.name:<8} {'':<7} undefined ({r.status})")
            continue
        out.append(f"{r.name:<8} {r.component:<7} {_approx(r.exact, 12):>18} "
                   f"{format_decimal(r.rounded):>12} {_approx(r.deviation, 6):>12}")
    worst = report.worst
    if worst is None:
        out.append("max deviation: 0")
    else:
        out.append(f"max deviation: {_approx(worst.deviation, 6)} ({worst.name}.{worst.component})")
    return "\n".join(out) + "\n"


# -- JSON -----------------------------------------------------------------------

def trace_to_dict(trace, deviation=None):
    """The ``trace/1`` document for a trace, optionally with deviations."""
    objects = []
    for i, r in enumerate(trace):
        entry = {"name": r.name, "kind": r.kind, "status": r.status, "value": None}
        if r.ok:
            comps = components(r.kind, r.value)
            nums = [display_number(v, trace.mode) for _, v in comps]
            entry["value"] = {label: s for (label, _), (s, _) in zip(comps, nums)}
            if trace.mode.is_exact:
                entry["exact_value"] = {label: str(v) for label, v in comps}
        else:
            entry["reason"] = r.reason
        if deviation is not None:
            rows = [d for d in deviation.rows if d.name == r.name and d.status == "ok"]
            if rows:
                entry["exact_value"] = {d.component: str(d.exact) for d in rows}
                entry["deviation"] = {d.component: _approx(d.deviation, 12) for d in rows}
        objects.append(entry)
    doc = {"schema": TRACE_SCHEMA, "mode": trace.mode.kind, "decimals": trace.mode.decimals,
           "objects": objects}
    if deviation is not None:
        worst = deviation.worst
        doc["max_deviation"] = _approx(deviation.max_deviation, 12)
        doc["worst"] = None if worst is None else f"{worst.name}.{worst.component}"
    return doc


def dumps(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def trace_json(trace, deviation=None):
    return dumps(trace_to_dict(trace, deviation))


def deviation_json(report):
    return dumps(trace_to_dict(report.rounded_trace, report))
