"""Experiment runner: dataset -> eroded puzzles -> beta x method sweep -> tables."""

from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
from PIL import Image

from .compatibility import CompatConfig
from .core import DomainError, GridGeometry, InvalidGeometryError, RepairBackendError, BalancingError
from .generate import make_instance, render_instance
from .pipeline import solve_instance
from .repair import RepairMethod
from .solver import SolverConfig

ADAPTER_ENV = "JIGSOLVE_ADAPTER"
IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_dir: str
    output_dir: str
    rows: int | None = None
    cols: int | None = None
    tile_side: int | None = None
    betas: tuple[float, ...] = (0.0,)
    methods: tuple[str, ...] = ("none",)
    adapter: str | None = None
    k: int = 5
    color_space: str = "lab"
    solver: SolverConfig = field(default_factory=SolverConfig)
    seed: int = 0
    workers: int = 1
    limit: int | None = None
    save_recon: bool = True

    def __post_init__(self) -> None:
        if not self.methods:
            raise DomainError("at least one repair method is required")
        for beta in self.betas:
            if not 0.0 <= beta < 0.5:
                raise DomainError(f"beta {beta} outside [0, 0.5)")
        if (self.rows is None) != (self.cols is None):
            raise DomainError("rows and cols must be given together")
        if self.rows is None and self.tile_side is None:
            raise DomainError("need either rows/cols or tile_side")

    @classmethod
    def from_json(cls, path: str | Path, **overrides) -> "ExperimentConfig":
        data = json.loads(Path(path).read_text())
        solver = SolverConfig(**data.pop("solver", {}))
        data.update({k: v for k, v in overrides.items() if v is not None})
        for key in ("betas", "methods"):
            if key in data and not isinstance(data[key], tuple):
                data[key] = tuple(data[key])
        if "anchor" in data:
            raise DomainError("anchor belongs under the solver section")
        return cls(solver=solver, **data)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["betas"] = list(self.betas)
        data["methods"] = list(self.methods)
        return data


@dataclass(frozen=True)
class IngestItem:
    image_id: str
    path: str
    group: str
    geometry: GridGeometry


@dataclass
class ResultRow:
    dataset: str
    image_id: str
    beta: float
    method: str
    direct: float
    neighbor: float
    perfect: bool
    iterations: int
    wall_time: float
    failed: bool = False
    error: str = ""


def ingest(
    dataset_dir: str | Path,
    rows: int | None = None,
    cols: int | None = None,
    tile_side: int | None = None,
    limit: int | None = None,
    log: list[str] | None = None,
) -> list[IngestItem]:
    """Enumerate decodable images (recursive, lexicographic) with their grids."""
    root = Path(dataset_dir)
    if not root.is_dir():
        raise DomainError(f"dataset directory {root} does not exist")
    paths = sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )
    items: list[IngestItem] = []
    for path in paths:
        if limit is not None and len(items) >= limit:
            break
        try:
            with Image.open(path) as img:
                width, height = img.size
        except OSError as exc:
            message = f"skipping undecodable image {path}: {exc}"
            if log is not None:
                log.append(message)
            continue
        rel = path.relative_to(root)
        group = rel.parts[0] if len(rel.parts) > 1 else root.name
        try:
            if tile_side is not None:
                geometry = GridGeometry(height // tile_side, width // tile_side)
            else:
                geometry = GridGeometry(rows, cols)
        except DomainError:
            if log is not None:
                log.append(f"skipping {path}: image too small for the requested grid")
            continue
        items.append(
            IngestItem(
                image_id=str(rel.with_suffix("")).replace(os.sep, "_"),
                path=str(path),
                group=group,
                geometry=geometry,
            )
        )
    if not items and log is not None:
        log.append(f"no usable images found under {root}")
    return items


def _instance_seed(base_seed: int, image_index: int, beta_index: int) -> int:
    # Method-independent so repair methods are compared on identical puzzles.
    seq = np.random.SeedSequence([base_seed, image_index, beta_index])
    return int(seq.generate_state(1, dtype=np.uint32)[0])


def _run_one(
    item: IngestItem,
    image_index: int,
    beta: float,
    beta_index: int,
    method_name: str,
    config: ExperimentConfig,
) -> ResultRow:
    row = ResultRow(
        dataset=item.group,
        image_id=item.image_id,
        beta=beta,
        method=method_name,
        direct=0.0,
        neighbor=0.0,
        perfect=False,
        iterations=0,
        wall_time=0.0,
    )
    adapter = config.adapter or os.environ.get(ADAPTER_ENV)
    try:
        method = RepairMethod.parse(method_name, adapter=adapter)
        image = np.asarray(Image.open(item.path).convert("RGB"), dtype=np.uint8)
        seed = _instance_seed(config.seed, image_index, beta_index)
        instance = make_instance(
            image, item.geometry, beta, seed, source_image=item.image_id
        )
        start = time.perf_counter()
        result = solve_instance(
            instance,
            method=method,
            compat_config=CompatConfig(k=config.k, color_space=config.color_space),
            solver_config=replace(config.solver, seed=seed),
        )
        row.wall_time = time.perf_counter() - start
        row.direct = result.scores.direct
        row.neighbor = result.scores.neighbor
        row.perfect = result.scores.perfect
        row.iterations = result.report.iterations
        if config.save_recon:
            recon = render_instance(instance, result.report.final_assignment)
            out = Path(config.output_dir) / "recon" / f"{item.image_id}_{beta}_{method_name}.png"
            out.parent.mkdir(parents=True, exist_ok=True)
            Image.fromarray(recon, mode="RGB").save(out)
    except (RepairBackendError, BalancingError, InvalidGeometryError) as exc:
        row.failed = True
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _job(args) -> ResultRow:
    return _run_one(*args)


def run(config: ExperimentConfig) -> list[ResultRow]:
    """Full sweep; writes results.csv/results.json/summary.txt/recon/ + run.log."""
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    log: list[str] = []
    items = ingest(
        config.dataset_dir,
        rows=config.rows,
        cols=config.cols,
        tile_side=config.tile_side,
        limit=config.limit,
        log=log,
    )
    jobs = [
        (item, image_index, beta, beta_index, method, config)
        for image_index, item in enumerate(items)
        for beta_index, beta in enumerate(config.betas)
        for method in config.methods
    ]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_job, jobs, chunksize=4))
    else:
        rows = [_job(job) for job in jobs]
    for row in rows:
        if row.failed:
            log.append(
                f"FAILED {row.image_id} beta={row.beta} method={row.method}: {row.error}"
            )
    write_outputs(rows, config, log)
    return rows


def write_outputs(rows: list[ResultRow], config: ExperimentConfig, log: list[str]) -> None:
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ok_rows = [r for r in rows if not r.failed]
    with open(out_dir / "results.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["dataset", "image_id", "beta", "method", "direct", "neighbor", "perfect", "iterations", "wall_time"]
        )
        for r in ok_rows:
            writer.writerow(
                [r.dataset, r.image_id, r.beta, r.method, f"{r.direct:.6f}",
                 f"{r.neighbor:.6f}", int(r.perfect), r.iterations, f"{r.wall_time:.4f}"]
            )
    payload = {
        "config": config.to_dict(),
        "rows": [asdict(r) for r in ok_rows],
        "failures": [asdict(r) for r in rows if r.failed],
        "summary": summarize(ok_rows)[1],
    }
    (out_dir / "results.json").write_text(json.dumps(payload, indent=2))
    (out_dir / "summary.txt").write_text(summarize(ok_rows)[0])
    if log:
        (out_dir / "run.log").write_text("\n".join(log) + "\n")


def summarize(rows: list[ResultRow]) -> tuple[str, list[dict]]:
    """Grouped means: one line per (group, beta, method) plus overall mean rows."""
    if not rows:
        return "no successful rows\n", []
    groups: dict[tuple[str, float, str], list[ResultRow]] = {}
    for row in rows:
        groups.setdefault((row.dataset, row.beta, row.method), []).append(row)

    def entry(name: str, beta: float, method: str, members: list[ResultRow]) -> dict:
        return {
            "group": name,
            "beta": beta,
            "method": method,
            "direct": float(np.mean([r.direct for r in members])),
            "neighbor": float(np.mean([r.neighbor for r in members])),
            "perfect": float(np.mean([1.0 if r.perfect else 0.0 for r in members])),
            "n": len(members),
        }

    table = [entry(g, b, m, members) for (g, b, m), members in sorted(groups.items())]
    combos = sorted({(row.beta, row.method) for row in rows})
    for beta, method in combos:
        members = [r for r in rows if r.beta == beta and r.method == method]
        table.append(entry("mean", beta, method, members))

    header = f"{'group':<16}{'beta':>6}{'method':>10}{'direct':>9}{'neighbor':>10}{'perfect':>9}{'n':>5}"
    lines = [header, "-" * len(header)]
    for e in table:
        lines.append(
            f"{e['group']:<16}{e['beta']:>6.2f}{e['method']:>10}{e['direct']:>9.4f}"
            f"{e['neighbor']:>10.4f}{e['perfect']:>9.4f}{e['n']:>5d}"
        )
    return "\n".join(lines) + "\n", table
