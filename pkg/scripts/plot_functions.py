#!/usr/bin/env python3
"""Adaptive plots of g = sin(x)/x, f = x sin(1/x) and h = (1+1/x)^x.

Writes one SVG per function plus a JSON summary next to them.  h is only
defined for x < -1 and x > 0; its plot is clipped to the same vertical
window as the horizontal one.
"""

import argparse
import json
from pathlib import Path

from geokernel.analysis import adaptive_plot, parse_expr
from geokernel.numeric.interval import Interval
from geokernel.svg import emit_svg

FUNCTIONS = {
    "g": "sin(x)/x",
    "f": "x*sin(1/x)",
    "h": "(1+1/x)^x",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/plots")
    ap.add_argument("--window", type=float, default=8.0)
    ap.add_argument("--tol", type=float, default=1e-3)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    w = args.window
    summary = {}
    for label, text in FUNCTIONS.items():
        data = adaptive_plot(parse_expr(text), Interval(-w, w), Interval(-w, w), args.tol)
        (out / f"{label}.svg").write_text(emit_svg(data))
        summary[label] = {
            "expr": data.expr,
            "cells": len(data.cells),
            "gaps": [list(g) for g in data.gaps],
            "boxes": len(data.boxes),
        }
        print(f"{label}: {data.expr}: {len(data.cells)} cells, gaps {data.gaps}, {len(data.boxes)} boxes")
    (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n")


if __name__ == "__main__":
    main()
