"""plotview <kind> --in a.csv[,b.csv...] --labels L1,L2 --zoom x0,x1 --out fig.png"""

from __future__ import annotations

import argparse
import sys

from .render import RENDERERS, PlotJob, SchemaMismatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plotview", description=__doc__)
    parser.add_argument("kind", choices=sorted(RENDERERS))
    parser.add_argument("--in", dest="inputs", required=True, help="comma-separated CSV paths")
    parser.add_argument("--labels", default="", help="comma-separated series labels")
    parser.add_argument("--zoom", help="x0,x1 zoom window (line plots)")
    parser.add_argument("--title", default="")
    parser.add_argument("--out", required=True, help="output PNG path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    zoom = None
    if args.zoom:
        try:
            lo, hi = (float(v) for v in args.zoom.split(","))
        except ValueError:
            print("error: --zoom expects x0,x1", file=sys.stderr)
            return 2
        zoom = (lo, hi)
    job = PlotJob(
        kind=args.kind,
        inputs=[p for p in args.inputs.split(",") if p],
        labels=[s for s in args.labels.split(",") if s],
        zoom=zoom,
        title=args.title,
        output=args.out,
    )
    try:
        RENDERERS[args.kind](job)
    except SchemaMismatch as exc:
        print(f"schema mismatch: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
