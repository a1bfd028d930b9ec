"""Single-instance pipeline: repair -> compatibility -> solve -> score."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .compatibility import CompatConfig, compatibility_table
from .generate import PuzzleInstance
from .metrics import Scores, score
from .repair import RepairMethod, repair_instance
from .solver import SolveReport, SolverConfig, solve


@dataclass(frozen=True)
class PipelineResult:
    report: SolveReport
    scores: Scores
    repaired: PuzzleInstance


def solve_instance(
    instance: PuzzleInstance,
    method: RepairMethod = RepairMethod.none(),
    compat_config: CompatConfig = CompatConfig(),
    solver_config: SolverConfig = SolverConfig(),
) -> PipelineResult:
    """Run the full pipeline on one puzzle instance."""
    repaired = repair_instance(instance, method)
    if repaired.beta > 0.0:
        # No-extension baseline on eroded tiles: score them as-is.
        compat_config = replace(compat_config, allow_eroded=True)
    table = compatibility_table(list(repaired.tiles), compat_config)
    report = solve(table, repaired.geometry, solver_config)
    scores = score(report.final_assignment, instance.ground_truth, instance.geometry)
    return PipelineResult(report=report, scores=scores, repaired=repaired)
