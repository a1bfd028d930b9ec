"""Command line front end: gen / solve / bench / render."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
from PIL import Image

from . import bench as bench_mod
from .bench import ADAPTER_ENV, ExperimentConfig
from .compatibility import CompatConfig
from .core import GridGeometry, Permutation
from .generate import load_bundle, make_instance, render_instance, save_bundle
from .pipeline import solve_instance
from .repair import RepairMethod
from .solver import SolverConfig
from .synthetic import gradient_image, textured_image


def _parse_gap_fill(text: str) -> tuple[int, int, int]:
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("gap fill must be R,G,B")
    return tuple(parts)  # type: ignore[return-value]


def _geometry_for(args, image_shape) -> GridGeometry:
    if args.tile_side:
        return GridGeometry(image_shape[0] // args.tile_side, image_shape[1] // args.tile_side)
    return GridGeometry(args.rows, args.cols)


def cmd_gen(args) -> int:
    if args.image:
        image = np.asarray(Image.open(args.image).convert("RGB"), dtype=np.uint8)
        source = Path(args.image).name
    else:
        maker = textured_image if args.synthetic == "textured" else gradient_image
        image = maker(args.height, args.width, seed=args.seed)
        source = f"synthetic-{args.synthetic}-{args.seed}"
    geometry = _geometry_for(args, image.shape)
    instance = make_instance(image, geometry, args.beta, args.seed, source_image=source)
    save_bundle(instance, args.out)
    print(f"wrote bundle with {instance.n} tiles to {args.out}")
    return 0


def _solver_config(args, seed: int) -> SolverConfig:
    return SolverConfig(
        seed=seed,
        max_iters=args.max_iters,
        sk_sweeps=args.sk_sweeps,
        sk_tol=args.sk_tol,
        stop_tol=args.stop_tol,
    )


def cmd_solve(args) -> int:
    instance = load_bundle(args.bundle)
    adapter = args.adapter or os.environ.get(ADAPTER_ENV)
    method = RepairMethod.parse(args.method, adapter=adapter)
    result = solve_instance(
        instance,
        method=method,
        compat_config=CompatConfig(k=args.k, color_space=args.color_space),
        solver_config=_solver_config(args, args.seed if args.seed is not None else instance.seed),
    )
    scores = result.scores
    print(
        f"direct={scores.direct:.4f} neighbor={scores.neighbor:.4f} "
        f"perfect={scores.perfect} iterations={result.report.iterations}"
    )
    if args.report:
        payload = result.report.to_dict()
        payload["scores"] = {
            "direct": scores.direct,
            "neighbor": scores.neighbor,
            "perfect": scores.perfect,
        }
        Path(args.report).write_text(json.dumps(payload, indent=2))
    if args.recon:
        recon = render_instance(instance, result.report.final_assignment)
        Image.fromarray(recon, mode="RGB").save(args.recon)
    return 0


def cmd_render(args) -> int:
    instance = load_bundle(args.bundle)
    if args.report:
        data = json.loads(Path(args.report).read_text())
        perm = Permutation(data["final_assignment"])
    else:
        perm = instance.ground_truth
    image = render_instance(instance, perm, gap_fill=args.gap_fill)
    Image.fromarray(image, mode="RGB").save(args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_bench(args) -> int:
    overrides = {
        "dataset_dir": args.dataset_dir,
        "output_dir": args.output_dir,
        "tile_side": args.tile_side,
        "rows": args.rows,
        "cols": args.cols,
        "seed": args.seed,
        "workers": args.workers,
        "limit": args.limit,
        "adapter": args.adapter or os.environ.get(ADAPTER_ENV),
        "k": args.k,
    }
    if args.betas:
        overrides["betas"] = tuple(float(b) for b in args.betas.split(","))
    if args.methods:
        overrides["methods"] = tuple(args.methods.split(","))
    if args.config:
        config = ExperimentConfig.from_json(args.config, **overrides)
    else:
        required = {k: v for k, v in overrides.items() if v is not None}
        config = ExperimentConfig(**required)
    rows = bench_mod.run(config)
    summary_path = Path(config.output_dir) / "summary.txt"
    print(summary_path.read_text())
    failed = [r for r in rows if r.failed]
    if failed:
        print(f"{len(failed)} failed rows; see run.log", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jigsolve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="create a puzzle bundle from an image")
    src = gen.add_mutually_exclusive_group(required=True)
    src.add_argument("--image", help="source image path")
    src.add_argument("--synthetic", choices=["textured", "gradient"], help="generate a source image")
    gen.add_argument("--height", type=int, default=216)
    gen.add_argument("--width", type=int, default=216)
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--tile-side", type=int)
    gen.add_argument("--beta", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    solve_p = sub.add_parser("solve", help="solve a puzzle bundle")
    solve_p.add_argument("--bundle", required=True)
    solve_p.add_argument("--method", default="linear")
    solve_p.add_argument("--adapter", help="external adapter command or endpoint")
    solve_p.add_argument("--k", type=int, default=5)
    solve_p.add_argument("--color-space", choices=["lab", "rgb"], default="lab")
    solve_p.add_argument("--seed", type=int)
    solve_p.add_argument("--max-iters", type=int, default=1000)
    solve_p.add_argument("--sk-sweeps", type=int, default=10)
    solve_p.add_argument("--sk-tol", type=float, default=1e-6)
    solve_p.add_argument("--stop-tol", type=float, default=1e-3)
    solve_p.add_argument("--report", help="write the solve report JSON here")
    solve_p.add_argument("--recon", help="write the reconstruction PNG here")
    solve_p.set_defaults(func=cmd_solve)

    render_p = sub.add_parser("render", help="render a bundle to an image")
    render_p.add_argument("--bundle", required=True)
    render_p.add_argument("--report", help="solve report JSON; defaults to ground truth")
    render_p.add_argument("--gap-fill", type=_parse_gap_fill, default=(0, 0, 0))
    render_p.add_argument("--out", required=True)
    render_p.set_defaults(func=cmd_render)

    bench_p = sub.add_parser("bench", help="run a beta x method sweep over a dataset")
    bench_p.add_argument("--config", help="ExperimentConfig JSON")
    bench_p.add_argument("--dataset-dir")
    bench_p.add_argument("--output-dir")
    bench_p.add_argument("--rows", type=int)
    bench_p.add_argument("--cols", type=int)
    bench_p.add_argument("--tile-side", type=int)
    bench_p.add_argument("--betas", help="comma separated, e.g. 0,0.07,0.14")
    bench_p.add_argument("--methods", help="comma separated, e.g. none,linear")
    bench_p.add_argument("--adapter")
    bench_p.add_argument("--k", type=int)
    bench_p.add_argument("--seed", type=int)
    bench_p.add_argument("--workers", type=int)
    bench_p.add_argument("--limit", type=int)
    bench_p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # fatal: bad inputs, unreadable files
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
