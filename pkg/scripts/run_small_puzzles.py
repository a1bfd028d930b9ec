"""3x3 puzzle sweep: erosion levels x repair methods on the small-image corpus."""

from __future__ import annotations

import argparse
from pathlib import Path

from jigsolve.bench import ExperimentConfig, run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dataset", default="data/pacs_style")
    parser.add_argument("--out", default="results/small_puzzles")
    parser.add_argument("--betas", default="0,0.07,0.14")
    parser.add_argument("--methods", default="none,linear")
    parser.add_argument("--adapter", help="external adapter command or endpoint")
    parser.add_argument("--limit", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=2)
    args = parser.parse_args()

    config = ExperimentConfig(
        dataset_dir=args.dataset,
        output_dir=args.out,
        rows=3,
        cols=3,
        betas=tuple(float(b) for b in args.betas.split(",")),
        methods=tuple(args.methods.split(",")),
        adapter=args.adapter,
        seed=args.seed,
        workers=args.workers,
        limit=args.limit,
        save_recon=False,
    )
    rows = run(config)
    print((Path(args.out) / "summary.txt").read_text())
    failed = sum(r.failed for r in rows)
    if failed:
        print(f"{failed} failed rows; see {args.out}/run.log")


if __name__ == "__main__":
    main()
