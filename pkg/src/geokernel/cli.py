"""Command-line interface: ``geokernel <command> ...``.

Exit codes: 0 verified / success, 1 falsified / no limit, 2 inconclusive or
estimate only, 3 degenerate input, 4 usage or parse error, 5 internal limit
exceeded.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .analysis.expr import parse_expr
from .analysis.limits import POINTS, certify_limit
from .analysis.plot import adaptive_plot
from .construct.evaluate import evaluate
from .construct.program import load_program
from .construct.report import (
    deviation_json,
    deviation_report,
    format_deviation,
    protocol_report,
    trace_json,
)
from .construct.sweep import CHECK_NAMES, parse_path, perturb_sweep
from .errors import GeoError, InternalLimitExceeded, NotFree, ParseError, UnknownObject
from .numeric.exact import MAX_TOWER_DEPTH, tower_depth_limit
from .numeric.interval import Interval
from .numeric.modes import ScalarMode
from .svg import emit_svg
from .theorems import (
    DEFAULT_TOLERANCE,
    DEGENERATE,
    FALSIFIED,
    check_rhombus,
    check_tzitzeica,
)

EXIT_OK, EXIT_FALSE, EXIT_UNSURE, EXIT_DEGENERATE, EXIT_USAGE, EXIT_LIMIT = range(6)
_VALUE_FLAGS = ("--domain", "--ylim", "--path")


@dataclass(frozen=True)
class RunConfig:
    mode: ScalarMode = ScalarMode()
    tolerance: float = DEFAULT_TOLERANCE
    decimals: int = 2
    plot_tol: float = 1e-3
    max_depth: int = 24
    domain: tuple = (-8.0, 8.0)
    y_clip: tuple = None
    svg: str = None
    json: bool = False
    max_tower_depth: int = MAX_TOWER_DEPTH

    @classmethod
    def from_args(cls, ns):
        decimals = getattr(ns, "decimals", None)
        mode_text = getattr(ns, "mode", None) or "exact"
        mode = ScalarMode.parse(mode_text, 2 if decimals is None else decimals)
        return cls(
            mode=mode,
            tolerance=getattr(ns, "tolerance", None) or DEFAULT_TOLERANCE,
            decimals=mode.decimals if decimals is None else decimals,
            plot_tol=getattr(ns, "tol", None) or 1e-3,
            max_depth=getattr(ns, "max_depth", None) or 24,
            domain=getattr(ns, "domain", None) or (-8.0, 8.0),
            y_clip=getattr(ns, "ylim", None),
            svg=getattr(ns, "svg", None),
            json=bool(getattr(ns, "json", False)),
            max_tower_depth=ns.max_tower_depth,
        )


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _range(text):
    try:
        a, b = text.split(":")
        lo, hi = float(Fraction(a)), float(Fraction(b))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = _Parser(prog="geokernel", description="Exact dynamic geometry and validated function analysis.")
    p.add_argument("--max-tower-depth", type=int, default=MAX_TOWER_DEPTH,
                   help="cap on nested square roots in exact arithmetic (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def mode_args(sp, tolerance=False):
        sp.add_argument("--mode", default="exact", help="exact | float | display | display(k)")
        sp.add_argument("--decimals", type=int, default=None, help="display decimals (default 2)")
        if tolerance:
            sp.add_argument("--tolerance", type=float, default=None,
                            help=f"residual tolerance outside exact mode (default {DEFAULT_TOLERANCE})")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("check", help="verify a theorem on a construction")
    sp.add_argument("file")
    sp.add_argument("--theorem", choices=("tzitzeica", "rhombus"), default="tzitzeica")
    mode_args(sp, tolerance=True)

    sp = sub.add_parser("protocol", help="print the construction protocol")
    sp.add_argument("file")
    mode_args(sp)

    sp = sub.add_parser("deviation", help="exact versus display-rounded values")
    sp.add_argument("file")
    sp.add_argument("--decimals", type=int, default=2)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("sweep", help="move a free point along a path")
    sp.add_argument("file")
    sp.add_argument("--target", required=True)
    sp.add_argument("--path", required=True, help="line:x0,y0:x1,y1 or arc:cx,cy:r:t0:t1")
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--check", action="append", choices=CHECK_NAMES)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--mode", default="exact")
    sp.add_argument("--decimals", type=int, default=None)

    sp = sub.add_parser("limit", help="certify a limit")
    sp.add_argument("expr")
    sp.add_argument("--at", choices=POINTS, default="0")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("plot", help="adaptive plot of a function")
    sp.add_argument("expr")
    sp.add_argument("--domain", type=_range, default=(-8.0, 8.0), help="a:b (default -8:8)")
    sp.add_argument("--ylim", type=_range, default=None, help="c:d; cells entirely outside become boxes")
    sp.add_argument("--tol", type=_positive, default=1e-3)
    sp.add_argument("--max-depth", type=int, default=24)
    sp.add_argument("--svg", default=None, help="write SVG here ('-' for stdout)")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("draw", help="draw an evaluated construction as SVG")
    sp.add_argument("file")
    sp.add_argument("--mode", default="exact")
    sp.add_argument("--decimals", type=int, default=None)
    sp.add_argument("--svg", default=None, help="write SVG here (default stdout)")
    return p


def _join_negative_values(argv):
    """``--domain -10:10`` would read as an option; glue it to its flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


# -- output ------------------------------------------------------------------------

def _color_enabled():
    flag = os.environ.get("GEO_COLOR")
    if flag is not None:
        return flag.strip() not in ("", "0")
    return sys.stderr.isatty()


def diagnose(message, level="error"):
    colors = {"error": "\033[31m", "warning": "\033[33m", "note": "\033[36m"}
    prefix = f"{level}:"
    if _color_enabled():
        prefix = f"{colors.get(level, '')}{prefix}\033[0m"
    print(f"{prefix} {message}", file=sys.stderr)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- commands ----------------------------------------------------------------------

def _verdict_exit(v):
    if v.outcome == DEGENERATE:
        return EXIT_DEGENERATE
    if v.outcome == FALSIFIED:
        return EXIT_FALSE
    return EXIT_OK


def cmd_check(ns, cfg):
    program = load_program(ns.file)
    if ns.theorem == "tzitzeica":
        v = check_tzitzeica(program, cfg.mode, cfg.tolerance)
    else:
        tol = 1e-9 if getattr(ns, "tolerance", None) is None else cfg.tolerance
        v = check_rhombus(program, cfg.mode, tol)
    sys.stdout.write(v.to_json() if cfg.json else f"{v}\n")
    return _verdict_exit(v)


def cmd_protocol(ns, cfg):
    trace = evaluate(load_program(ns.file), cfg.mode)
    sys.stdout.write(trace_json(trace) if cfg.json else protocol_report(trace))
    return EXIT_OK


def cmd_deviation(ns, cfg):
    report = deviation_report(load_program(ns.file), ns.decimals)
    sys.stdout.write(deviation_json(report) if ns.json else format_deviation(report))
    return EXIT_OK


def cmd_sweep(ns, cfg):
    program = load_program(ns.file)
    try:
        path = parse_path(ns.path)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ns.steps < 1:
        raise UsageError("--steps must be at least 1")
    report = perturb_sweep(program, ns.target, path, ns.steps, tuple(ns.check or ("defined",)),
                           cfg.mode, workers=max(1, ns.workers))
    sys.stdout.write(report.format())
    return EXIT_OK if report.all_passed else EXIT_FALSE


def cmd_limit(ns, cfg):
    v = certify_limit(parse_expr(ns.expr), ns.at)
    if cfg.json:
        import json
        sys.stdout.write(json.dumps(v.to_dict(), indent=2, ensure_ascii=False) + "\n")
    else:
        print(v)
        print("certificate: " + " > ".join(v.certificate))
    return v.exit_code


def cmd_plot(ns, cfg):
    e = parse_expr(ns.expr)
    clip = None if cfg.y_clip is None else Interval(*cfg.y_clip)
    data = adaptive_plot(e, Interval(*cfg.domain), clip, cfg.plot_tol, cfg.max_depth)
    if cfg.svg is not None:
        _write(emit_svg(data), cfg.svg)
    if cfg.json:
        sys.stdout.write(data.to_json())
    elif cfg.svg != "-":
        lines = sum(1 for c in data.cells if c.kind == "line")
        print(f"plot {data.expr} on [{cfg.domain[0]!r}, {cfg.domain[1]!r}]: "
              f"{len(data.cells)} cells, {lines} line, {len(data.gaps)} gap, {len(data.boxes)} box")
        for a, b in data.gaps:
            print(f"gap [{a!r}, {b!r}]")
    return EXIT_OK


def cmd_draw(ns, cfg):
    trace = evaluate(load_program(ns.file), cfg.mode)
    for r in trace:
        if not r.ok:
            diagnose(f"{r.name} not drawn: {r.status}", "warning")
    _write(emit_svg(trace), cfg.svg)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check, "protocol": cmd_protocol, "deviation": cmd_deviation,
    "sweep": cmd_sweep, "limit": cmd_limit, "plot": cmd_plot, "draw": cmd_draw,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_negative_values(argv))
        cfg = RunConfig.from_args(ns)
        if ns.max_tower_depth < 0:
            raise UsageError("--max-tower-depth must be nonnegative")
        with tower_depth_limit(ns.max_tower_depth):
            return COMMANDS[ns.command](ns, cfg)
    except UsageError as exc:
        diagnose(str(exc))
        return EXIT_USAGE
    except (ParseError, UnknownObject, NotFree) as exc:
        diagnose(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        diagnose(str(exc))
        return EXIT_USAGE
    except InternalLimitExceeded as exc:
        diagnose(f"{exc.status}: {exc}")
        return EXIT_LIMIT
    except GeoError as exc:
        diagnose(f"{exc.status}: {exc}")
        return EXIT_DEGENERATE
    except ValueError as exc:
        # bad mode names, bad numbers in options
        diagnose(str(exc))
        return EXIT_USAGE
    except RecursionError:
        diagnose("expression nesting is too deep")
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
