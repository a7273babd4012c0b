#!/usr/bin/env python3
"""Regenerate the analytic correctable-fraction tables.

With no arguments this prints the standard nine-rate table (design rates
0.1 through 0.9).  --step refines the rate grid, --regime picks a single
column, and --out writes the text to a file instead of stdout.

Examples:
    python3 scripts/reproduce_tables.py
    python3 scripts/reproduce_tables.py --step 0.05
    python3 scripts/reproduce_tables.py --regime grs --step 0.01 --out grs.txt
"""

import argparse
import sys

from expanderlp import format_tables, table_fraction


def fine_grid(step: float, regime: str) -> str:
    lines = []
    if regime == "both":
        lines.append("rate  binary-locals (x 1e-4)  reed-solomon-locals (x 1e-2)")
    else:
        lines.append(f"rate  {regime}")
    count = round(1.0 / step) - 1
    for i in range(1, count + 1):
        rate = i * step
        if not 0.0 < rate < 1.0:
            continue
        if regime == "both":
            binary = table_fraction(rate, "binary") * 1e4
            grs = table_fraction(rate, "grs") * 1e2
            lines.append(f"{rate:.3f}  {binary:<22.4g}  {grs:.6g}")
        else:
            scale = 1e4 if regime == "binary" else 1e2
            lines.append(f"{rate:.3f}  {table_fraction(rate, regime) * scale:.6g}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--step", type=float, default=None,
                        help="rate grid spacing (default: the standard 0.1 grid)")
    parser.add_argument("--regime", choices=("binary", "grs", "both"),
                        default="both")
    parser.add_argument("--out", default=None, help="write to this file")
    args = parser.parse_args(argv)

    if args.step is None and args.regime == "both":
        text = format_tables()
    else:
        step = args.step if args.step is not None else 0.1
        if not 0.0 < step < 1.0:
            parser.error("--step must be in (0, 1)")
        text = fine_grid(step, args.regime)

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(text, end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
