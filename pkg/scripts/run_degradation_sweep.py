"""Accuracy vs erosion level, with and without border repair (trend curve)."""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from jigsolve.bench import ExperimentConfig, run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dataset", default="data/pacs_style")
    parser.add_argument("--out", default="results/degradation")
    parser.add_argument("--betas", default="0,0.03,0.07,0.10,0.14")
    parser.add_argument("--methods", default="none,linear")
    parser.add_argument("--adapter")
    parser.add_argument("--limit", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--plot", action="store_true", help="also write trend.png")
    args = parser.parse_args()

    betas = tuple(float(b) for b in args.betas.split(","))
    methods = tuple(args.methods.split(","))
    config = ExperimentConfig(
        dataset_dir=args.dataset,
        output_dir=args.out,
        rows=3,
        cols=3,
        betas=betas,
        methods=methods,
        adapter=args.adapter,
        seed=args.seed,
        workers=args.workers,
        limit=args.limit,
        save_recon=False,
    )
    rows = run(config)
    curves: dict[str, dict[str, list[float]]] = {m: {"direct": [], "perfect": []} for m in methods}
    for method in methods:
        for beta in betas:
            members = [r for r in rows if r.method == method and r.beta == beta and not r.failed]
            curves[method]["direct"].append(float(np.mean([r.direct for r in members])))
            curves[method]["perfect"].append(float(np.mean([r.perfect for r in members])))
    print(f"{'beta':>6} " + " ".join(f"{m+'-direct':>14}{m+'-perfect':>15}" for m in methods))
    for i, beta in enumerate(betas):
        line = f"{beta:>6.2f} "
        for method in methods:
            line += f"{curves[method]['direct'][i]:>14.3f}{curves[method]['perfect'][i]:>15.3f}"
        print(line)

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(1, 2, figsize=(10, 4))
        for method in methods:
            axes[0].plot(betas, curves[method]["direct"], marker="o", label=method)
            axes[1].plot(betas, curves[method]["perfect"], marker="o", label=method)
        axes[0].set_title("direct accuracy")
        axes[1].set_title("perfect reconstruction")
        for ax in axes:
            ax.set_xlabel("erosion beta")
            ax.set_ylim(0, 1.05)
            ax.grid(alpha=0.3)
            ax.legend()
        fig.tight_layout()
        fig.savefig(Path(args.out) / "trend.png", dpi=120)
        print(f"wrote {args.out}/trend.png")


if __name__ == "__main__":
    main()
