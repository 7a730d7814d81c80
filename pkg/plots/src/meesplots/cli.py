"""Script entry points. Exit codes: 0 success, 1 unusable input (missing
file, schema error, geometry mismatch, empty data), 64 usage error."""

from __future__ import annotations

import argparse
import sys

from .errors import PlotInputError
from .render import FigureSpec, render_curves, render_heatmap

EXIT_INPUT = 1
EXIT_USAGE = 64


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def heatmap_main(argv=None) -> int:
    parser = Parser(prog="meesplots-heatmap", description=__doc__)
    parser.add_argument("--input", action="append", required=True,
                        help="histogram CSV; repeat to overlay layers of identical geometry")
    parser.add_argument("--overlay", help="curve CSV drawn on top of the heatmap")
    parser.add_argument("--output", required=True, help="image path (.png or .svg)")
    parser.add_argument("--mode", choices=["eta", "expense"], default="expense")
    parser.add_argument("--smooth", type=float, default=0.0,
                        help="cosmetic Gaussian sigma in bins (default off)")
    parser.add_argument("--title")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    spec = FigureSpec(
        inputs=tuple(args.input),
        overlay=args.overlay,
        output=args.output,
        mode=args.mode,
        smooth=args.smooth,
        title=args.title,
        dpi=args.dpi,
    )
    try:
        result = render_heatmap(spec)
    except (PlotInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {result.path}")
    return 0


def curves_main(argv=None) -> int:
    parser = Parser(prog="meesplots-curves", description=__doc__)
    parser.add_argument("--input", required=True, help="curve CSV from the scan command")
    parser.add_argument("--output", required=True, help="image path (.png or .svg)")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        result = render_curves(args.input, args.output, dpi=args.dpi)
    except (PlotInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {result.path}")
    return 0


if __name__ == "__main__":
    sys.exit(heatmap_main())
