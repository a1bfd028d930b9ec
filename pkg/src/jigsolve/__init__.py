"""Square jigsaw puzzles with eroded borders: repair, compatibility, relaxation solving."""

from .compatibility import (
    BoundaryStats,
    CompatConfig,
    CompatibilityTable,
    DissimilarityTable,
    boundary_stats,
    compatibility_table,
    dissimilarity_table,
    mgc_pair,
    normalize,
)
from .core import (
    BalancingError,
    DomainError,
    GridGeometry,
    InvalidGeometryError,
    Permutation,
    Relation,
    RepairBackendError,
    Tile,
    neighbor_position,
)
from .generate import (
    PuzzleInstance,
    erode_tiles,
    erosion_pixels,
    load_bundle,
    make_instance,
    render,
    render_instance,
    save_bundle,
    shuffle_tiles,
    slice_image,
)
from .metrics import Scores, direct_accuracy, neighbor_accuracy, perfect, score
from .pipeline import PipelineResult, solve_instance
from .repair import RepairMethod, repair_instance, repair_tile
from .solver import (
    CompatTensor,
    IterationStats,
    SolveReport,
    SolverConfig,
    build_compat_tensor,
    discretize,
    rl_step,
    sinkhorn,
    solve,
    support,
)

__version__ = "0.1.0"

__all__ = [
    "BalancingError",
    "BoundaryStats",
    "CompatConfig",
    "CompatTensor",
    "CompatibilityTable",
    "DissimilarityTable",
    "DomainError",
    "GridGeometry",
    "InvalidGeometryError",
    "IterationStats",
    "Permutation",
    "PipelineResult",
    "PuzzleInstance",
    "Relation",
    "RepairBackendError",
    "RepairMethod",
    "Scores",
    "SolveReport",
    "SolverConfig",
    "Tile",
    "boundary_stats",
    "build_compat_tensor",
    "compatibility_table",
    "direct_accuracy",
    "discretize",
    "dissimilarity_table",
    "erode_tiles",
    "erosion_pixels",
    "load_bundle",
    "make_instance",
    "mgc_pair",
    "neighbor_accuracy",
    "neighbor_position",
    "normalize",
    "perfect",
    "render",
    "render_instance",
    "repair_instance",
    "repair_tile",
    "rl_step",
    "save_bundle",
    "score",
    "shuffle_tiles",
    "sinkhorn",
    "slice_image",
    "solve",
    "solve_instance",
    "support",
]
