"""Turn source images into shuffled, optionally eroded puzzle instances."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from PIL import Image

from .core import DomainError, GridGeometry, InvalidGeometryError, Permutation, Tile

PRNG_NAME = "numpy.random.default_rng(seed).permutation(n)"


@dataclass(frozen=True)
class PuzzleInstance:
    """Shuffled tiles plus everything needed to score and rebuild the source."""

    tiles: tuple[Tile, ...]
    geometry: GridGeometry
    ground_truth: Permutation
    beta: float
    seed: int
    erosion_pixels_per_side: int = 0
    source_image: str = ""

    def __post_init__(self) -> None:
        if len(self.tiles) != self.geometry.n:
            raise DomainError(
                f"{len(self.tiles)} tiles for a {self.geometry.rows}x{self.geometry.cols} grid"
            )

    @property
    def n(self) -> int:
        return self.geometry.n

    @property
    def tile_side(self) -> int:
        return self.tiles[0].side


def erosion_pixels(beta: float, side: int) -> int:
    """Pixels removed per tile side for erosion fraction `beta` of an uneroded side."""
    if not 0.0 <= beta < 0.5:
        raise DomainError(f"beta must be in [0, 0.5), got {beta}")
    return int(np.floor(beta * side / 2.0))


def _infer_erosion(beta: float, eroded_side: int) -> int:
    # Recover e from the eroded side via e = floor(beta*(side+2e)/2); returns the
    # smallest consistent e. The authoritative amount is carried in manifests.
    if beta == 0.0:
        return 0
    for e in range(eroded_side):
        if erosion_pixels(beta, eroded_side + 2 * e) == e:
            return e
    raise DomainError(f"no erosion amount consistent with beta={beta}, side={eroded_side}")


def slice_image(image: np.ndarray, geometry: GridGeometry) -> list[Tile]:
    """Cut an RGB image into row-major square tiles, cropping any remainder."""
    if image.ndim != 3 or image.shape[2] != 3:
        raise DomainError("image must be an HxWx3 array")
    height = (image.shape[0] // geometry.rows) * geometry.rows
    width = (image.shape[1] // geometry.cols) * geometry.cols
    if height == 0 or width == 0:
        raise InvalidGeometryError(
            f"image {image.shape[:2]} too small for {geometry.rows}x{geometry.cols} grid"
        )
    tile_h = height // geometry.rows
    tile_w = width // geometry.cols
    if tile_h != tile_w:
        raise InvalidGeometryError(
            f"grid {geometry.rows}x{geometry.cols} on image {image.shape[:2]} "
            f"gives non-square {tile_h}x{tile_w} tiles"
        )
    image = np.ascontiguousarray(image[:height, :width])
    tiles = []
    for r in range(geometry.rows):
        for c in range(geometry.cols):
            block = image[r * tile_h : (r + 1) * tile_h, c * tile_w : (c + 1) * tile_w]
            tiles.append(Tile(block.copy(), original_index=r * geometry.cols + c))
    return tiles


def erode_tiles(tiles: list[Tile], beta: float) -> list[Tile]:
    """Remove e = floor(beta*S/2) pixels from each side of every tile."""
    if not 0.0 <= beta < 0.5:
        raise DomainError(f"beta must be in [0, 0.5), got {beta}")
    out = []
    for tile in tiles:
        if tile.erosion_beta > 0.0:
            raise DomainError("tile already eroded; erosion is not stackable")
        e = erosion_pixels(beta, tile.side)
        if e == 0:
            out.append(replace(tile, erosion_beta=beta) if beta > 0 else tile)
            continue
        core = tile.pixels[e:-e, e:-e].copy()
        out.append(Tile(core, original_index=tile.original_index, erosion_beta=beta))
    return out


def shuffle_tiles(
    tiles: list[Tile],
    seed: int,
    geometry: GridGeometry | None = None,
    source_image: str = "",
    erosion: int | None = None,
) -> PuzzleInstance:
    """Apply a seeded uniform random permutation and record the ground truth.

    geometry defaults to the square grid when the tile count is a perfect
    square; non-square grids must be passed explicitly.
    """
    if not tiles:
        raise DomainError("cannot shuffle an empty tile list")
    n = len(tiles)
    if geometry is None:
        root = int(round(np.sqrt(n)))
        if root * root != n:
            raise DomainError(f"cannot infer a grid for {n} tiles; pass geometry")
        geometry = GridGeometry(root, root)
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    shuffled = tuple(tiles[k] for k in order)
    beta = tiles[0].erosion_beta
    if erosion is None:
        erosion = _infer_erosion(beta, tiles[0].side)
    return PuzzleInstance(
        tiles=shuffled,
        geometry=geometry,
        ground_truth=Permutation(t.original_index for t in shuffled),
        beta=beta,
        seed=seed,
        erosion_pixels_per_side=erosion,
        source_image=source_image,
    )


def make_instance(
    image: np.ndarray,
    geometry: GridGeometry,
    beta: float,
    seed: int,
    source_image: str = "",
) -> PuzzleInstance:
    """slice -> erode -> shuffle convenience over one source image."""
    sliced = slice_image(image, geometry)
    e = erosion_pixels(beta, sliced[0].side)
    tiles = erode_tiles(sliced, beta)
    return shuffle_tiles(tiles, seed, geometry=geometry, source_image=source_image, erosion=e)


def render(
    tiles: list[Tile] | tuple[Tile, ...],
    perm: Permutation,
    geometry: GridGeometry,
    gap_fill: tuple[int, int, int] = (0, 0, 0),
    pad: int | None = None,
) -> np.ndarray:
    """Paste tiles at their assigned cells, gutters of `pad` px per side filled
    with gap_fill. pad=None infers the erosion amount from the tiles."""
    if len(tiles) != geometry.n:
        raise DomainError("tile count does not match geometry")
    side = tiles[0].side
    if pad is None:
        pad = _infer_erosion(tiles[0].erosion_beta, side)
    cell = side + 2 * pad
    canvas = np.empty((geometry.rows * cell, geometry.cols * cell, 3), dtype=np.uint8)
    canvas[:, :] = np.asarray(gap_fill, dtype=np.uint8)
    for piece, tile in enumerate(tiles):
        row, col = geometry.row_col(perm[piece])
        y0 = row * cell + pad
        x0 = col * cell + pad
        canvas[y0 : y0 + side, x0 : x0 + side] = tile.pixels
    return canvas


def render_instance(
    instance: PuzzleInstance,
    perm: Permutation | None = None,
    gap_fill: tuple[int, int, int] = (0, 0, 0),
) -> np.ndarray:
    """Render an instance with `perm` (default: its ground truth)."""
    if perm is None:
        perm = instance.ground_truth
    return render(
        list(instance.tiles),
        perm,
        instance.geometry,
        gap_fill=gap_fill,
        pad=instance.erosion_pixels_per_side,
    )


def save_bundle(instance: PuzzleInstance, path: str | Path) -> None:
    """Write a puzzle bundle: tiles/####.png in shuffled order + manifest.json."""
    path = Path(path)
    tiles_dir = path / "tiles"
    tiles_dir.mkdir(parents=True, exist_ok=True)
    for k, tile in enumerate(instance.tiles):
        Image.fromarray(tile.pixels, mode="RGB").save(tiles_dir / f"{k:04d}.png")
    manifest = {
        "rows": instance.geometry.rows,
        "cols": instance.geometry.cols,
        "tile_side": instance.tile_side,
        "beta": instance.beta,
        "erosion_pixels_per_side": instance.erosion_pixels_per_side,
        "seed": instance.seed,
        "ground_truth": list(instance.ground_truth),
        "source_image": instance.source_image,
        "prng": PRNG_NAME,
    }
    (path / "manifest.json").write_text(json.dumps(manifest, indent=2))


def load_bundle(path: str | Path) -> PuzzleInstance:
    """Read a puzzle bundle written by save_bundle (bit-exact round trip)."""
    path = Path(path)
    manifest = json.loads((path / "manifest.json").read_text())
    geometry = GridGeometry(manifest["rows"], manifest["cols"])
    ground_truth = Permutation(manifest["ground_truth"])
    beta = float(manifest["beta"])
    tiles = []
    for k in range(geometry.n):
        png = Image.open(path / "tiles" / f"{k:04d}.png").convert("RGB")
        tiles.append(
            Tile(
                np.asarray(png, dtype=np.uint8),
                original_index=ground_truth[k],
                erosion_beta=beta,
            )
        )
    return PuzzleInstance(
        tiles=tuple(tiles),
        geometry=geometry,
        ground_truth=ground_truth,
        beta=beta,
        seed=int(manifest["seed"]),
        erosion_pixels_per_side=int(manifest["erosion_pixels_per_side"]),
        source_image=manifest.get("source_image", ""),
    )
