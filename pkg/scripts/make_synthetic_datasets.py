"""Generate the synthetic corpora used by the experiment scripts.

Creates:
  <out>/pacs_style/          400 textured 216x216 images (3x3 puzzles at 72px)
  <out>/benchmark/set70/     20 textured images for 7x10 grids at 48px tiles
  <out>/benchmark/set88/     20 textured images for 8x11 grids
  <out>/benchmark/set150/    20 textured images for 10x15 grids
"""

from __future__ import annotations

import argparse
from pathlib import Path

from jigsolve.synthetic import make_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", help="output root (default: data)")
    parser.add_argument("--small-count", type=int, default=400)
    parser.add_argument("--seed", type=int, default=1000)
    args = parser.parse_args()

    root = Path(args.out)
    make_corpus(root / "pacs_style", count=args.small_count, kind="textured",
                height=216, width=216, seed=args.seed)
    layouts = {"set70": (7, 10), "set88": (8, 11), "set150": (10, 15)}
    for index, (name, (rows, cols)) in enumerate(layouts.items()):
        make_corpus(root / "benchmark" / name, count=20, kind="textured",
                    height=rows * 48, width=cols * 48, seed=2000 + 100 * index)
    print(f"wrote corpora under {root}")


if __name__ == "__main__":
    main()
