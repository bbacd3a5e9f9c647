"""render_figures <figure_id> --data <dir> --out <dir>"""

import argparse
import sys

import matplotlib.pyplot as plt

from .csvdata import DatasetError
from .render import RECIPES, render


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="render_figures", description=__doc__)
    ap.add_argument("figure_id", type=int, choices=sorted(RECIPES),
                    help="preset figure to render")
    ap.add_argument("--data", default="data", help="directory with the CSV datasets")
    ap.add_argument("--out", default="figures", help="output directory for images")
    args = ap.parse_args(argv)
    try:
        path, fig = render(args.figure_id, args.data, args.out)
    except (DatasetError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    plt.close(fig)
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
