#!/usr/bin/env python3
"""Emit CSV grids of the connection constant and the c=1 modular kernel.

Usage: python scripts/kernel_grid.py --out-dir results/ [--n 20] [--m 0.17]
"""
import argparse
import pathlib

from taumod.cli import emit_table
from taumod.precision import PrecisionContext


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--m", type=float, default=0.17)
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ctx = PrecisionContext()

    rows = emit_table("upsilon_grid",
                      {"a": f"0.05:0.45:{args.n}", "nu": f"0.2:6.0:{args.n}"},
                      args.m, None, ctx)
    (out / "upsilon_grid.csv").write_text("\n".join(rows) + "\n")
    print(f"wrote {out / 'upsilon_grid.csv'} ({len(rows) - 1} rows)")

    rows = emit_table("kernel_grid",
                      {"a": f"0.05:0.45:{args.n}", "atil": f"0.05:0.45:{args.n}"},
                      args.m, None, ctx)
    (out / "kernel_grid.csv").write_text("\n".join(rows) + "\n")
    print(f"wrote {out / 'kernel_grid.csv'} ({len(rows) - 1} rows)")


if __name__ == "__main__":
    main()
