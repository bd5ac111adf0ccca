#!/usr/bin/env python3
"""Rebuild the three-circle figure from its printed free objects.

Prints the protocol at two decimals, the exact-versus-rounded deviation
table, the theorem verdicts in both modes and the matched side pairs.
"""

import argparse
from pathlib import Path

from geokernel.construct import deviation_report, evaluate, format_deviation, load_program, protocol_report
from geokernel.numeric.modes import DisplayRounded, Exact
from geokernel.theorems import check_tzitzeica, format_side_report, parallelogram_side_report

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--program", default=str(ROOT / "corpus" / "geo" / "fig7.geo"))
    ap.add_argument("--decimals", type=int, default=2)
    args = ap.parse_args()

    program = load_program(args.program)
    mode = DisplayRounded(args.decimals)
    print(protocol_report(evaluate(program, mode)))
    print(format_deviation(deviation_report(program, args.decimals)))
    print("rounded:", check_tzitzeica(program, mode))
    print("exact:  ", check_tzitzeica(program, Exact))
    print()
    print(format_side_report(parallelogram_side_report(program, mode)))
    for k in (2, 4, 6, 8):
        print(f"max deviation at k={k}: {float(deviation_report(program, k).max_deviation):.3e}")


if __name__ == "__main__":
    main()
