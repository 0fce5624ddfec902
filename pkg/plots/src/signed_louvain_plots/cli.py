"""Standalone figure renderer: ``plot sweep <csv> <out.png>`` and ``plot bench <csv> <out.png>``."""

import argparse
import sys

from .render import SchemaError, plot_bench, plot_sweep


def build_parser():
    parser = argparse.ArgumentParser(prog="plot", description="Render figures from harness CSVs.")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind, func in (("sweep", plot_sweep), ("bench", plot_bench)):
        p = sub.add_parser(kind, help=f"render a {kind} CSV")
        p.add_argument("csv_path")
        p.add_argument("out_image_path")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args.csv_path, args.out_image_path)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
