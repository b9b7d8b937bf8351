"""plots: render figures from simulator CSV/JSON artifacts.

    plots <kind> --in <files...> --out <image> [--title T] [--labels a,b] [--q N]

Kinds: spectrum | rho_heatmap | husimi | photon_dist_compare | fock_scan.
Exit codes: 0 success, 1 bad input (missing file, schema mismatch).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_KINDS, FigureSpec, render
from .readers import SchemaError


def parse_and_dispatch(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots", description="Figures for hhgsim artifacts")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in FIGURE_KINDS:
        p = sub.add_parser(kind)
        p.add_argument("--in", dest="inputs", nargs="+", required=True,
                       type=Path, help="input artifact file(s)")
        p.add_argument("--out", dest="output", required=True, type=Path,
                       help="output image path (png/pdf/svg)")
        p.add_argument("--title", default=None)
        p.add_argument("--labels", default=None,
                       help="comma-separated series labels (spectrum overlay)")
        p.add_argument("--q", type=int, default=None,
                       help="harmonic order annotation (rho_heatmap)")
    args = parser.parse_args(argv)
    labels = args.labels.split(",") if args.labels else []
    try:
        spec = FigureSpec(kind=args.kind, inputs=list(args.inputs),
                          output=args.output, title=args.title,
                          labels=labels, q=args.q)
        path = render(spec)
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
