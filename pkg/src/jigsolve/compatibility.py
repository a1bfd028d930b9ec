"""Pairwise tile dissimilarity (Mahalanobis gradient terms) and K-min compatibilities."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from skimage.color import rgb2lab

from .core import DomainError, Relation, Tile

COLOR_SPACES = ("lab", "rgb")


@dataclass(frozen=True)
class CompatConfig:
    """Knobs for the dissimilarity/compatibility computation.

    allow_eroded bypasses the repaired-tiles precondition, used only for the
    no-extension baseline where eroded tiles are scored as-is.
    """

    k: int = 5
    color_space: str = "lab"
    ridge_scale: float = 1e-6
    allow_eroded: bool = False

    def __post_init__(self) -> None:
        if self.color_space not in COLOR_SPACES:
            raise DomainError(f"color_space must be one of {COLOR_SPACES}")
        if self.k < 2:
            raise DomainError(f"k must be >= 2, got {self.k}")


@dataclass(frozen=True)
class BoundaryStats:
    """Mean cross-boundary gradient and regularized inverse covariance."""

    mu: np.ndarray
    cov_inv: np.ndarray


@dataclass(frozen=True)
class DissimilarityTable:
    """Per-relation n x n dissimilarities; diagonal stored as +inf (self-pairs excluded)."""

    gamma: dict[Relation, np.ndarray]

    @property
    def n(self) -> int:
        return self.gamma[Relation.RIGHT].shape[0]


@dataclass(frozen=True)
class CompatibilityTable:
    """Per-relation n x n compatibilities in [0, 1], sparse by construction."""

    compat: dict[Relation, np.ndarray]
    k: int

    @property
    def n(self) -> int:
        return self.compat[Relation.RIGHT].shape[0]


def to_float(pixels: np.ndarray, color_space: str) -> np.ndarray:
    """8-bit RGB raster to the float working space (CIELAB D65 or raw RGB)."""
    if color_space == "lab":
        return rgb2lab(pixels).astype(np.float64)
    return pixels.astype(np.float64)


def _stats_from_samples(samples: np.ndarray, ridge_scale: float) -> tuple[np.ndarray, np.ndarray]:
    """Stacked per-tile samples (n, S, 3) -> (mu (n,3), cov_inv (n,3,3))."""
    count = samples.shape[1]
    mu = samples.mean(axis=1)
    centered = samples - mu[:, None, :]
    cov = np.einsum("nsc,nsd->ncd", centered, centered) / (count - 1)
    trace = np.trace(cov, axis1=1, axis2=2)
    eps = ridge_scale * np.maximum(trace / 3.0, 1.0)
    cov = cov + eps[:, None, None] * np.eye(3)
    return mu, np.linalg.inv(cov)


def _check_tile(tile: Tile, config: CompatConfig) -> None:
    if tile.erosion_beta != 0.0 and not config.allow_eroded:
        raise DomainError(
            "tile still eroded; repair it first or set CompatConfig.allow_eroded"
        )


def boundary_stats(tile: Tile, side: Relation, config: CompatConfig = CompatConfig()) -> BoundaryStats:
    """Gradient statistics of a tile's boundary on the given side.

    Samples are outermost minus second-outermost pixel rows/columns; the
    covariance gets a relative ridge so uniform borders stay invertible.
    """
    _check_tile(tile, config)
    img = to_float(tile.pixels, config.color_space)
    if side is Relation.RIGHT:
        samples = img[:, -1, :] - img[:, -2, :]
    elif side is Relation.LEFT:
        samples = img[:, 0, :] - img[:, 1, :]
    elif side is Relation.UP:
        samples = img[0, :, :] - img[1, :, :]
    else:
        samples = img[-1, :, :] - img[-2, :, :]
    mu, cov_inv = _stats_from_samples(samples[None], config.ridge_scale)
    return BoundaryStats(mu=mu[0], cov_inv=cov_inv[0])


def _mahal_rows(diffs: np.ndarray, mu: np.ndarray, cov_inv: np.ndarray) -> float:
    x = diffs - mu
    return float(np.einsum("sc,cd,sd->", x, cov_inv, x))


def _pair_right(img_i: np.ndarray, img_j: np.ndarray, ridge_scale: float) -> float:
    """Dissimilarity of (i left of j) on float images: color + derivative terms."""
    gi = img_i[:, -1, :] - img_i[:, -2, :]
    gj = img_j[:, 0, :] - img_j[:, 1, :]
    mu_i, vinv_i = _stats_from_samples(gi[None], ridge_scale)
    mu_j, vinv_j = _stats_from_samples(gj[None], ridge_scale)
    lam = img_j[:, 0, :] - img_i[:, -1, :]
    total = _mahal_rows(lam, mu_i[0], vinv_i[0])
    total += _mahal_rows(-lam, mu_j[0], vinv_j[0])

    di = img_i[1:] - img_i[:-1]
    dj = img_j[1:] - img_j[:-1]
    dgi = di[:, -1, :] - di[:, -2, :]
    dgj = dj[:, 0, :] - dj[:, 1, :]
    mu_di, vinv_di = _stats_from_samples(dgi[None], ridge_scale)
    mu_dj, vinv_dj = _stats_from_samples(dgj[None], ridge_scale)
    dlam = dj[:, 0, :] - di[:, -1, :]
    total += _mahal_rows(dlam, mu_di[0], vinv_di[0])
    total += _mahal_rows(-dlam, mu_dj[0], vinv_dj[0])
    return total


def mgc_pair(
    tile_i: Tile, tile_j: Tile, relation: Relation, config: CompatConfig = CompatConfig()
) -> float:
    """Dissimilarity of placing tile_j adjacent to tile_i in direction `relation`."""
    if tile_i.side != tile_j.side:
        raise DomainError("tiles must share dimensions")
    _check_tile(tile_i, config)
    _check_tile(tile_j, config)
    if relation is Relation.LEFT:
        return mgc_pair(tile_j, tile_i, Relation.RIGHT, config)
    if relation is Relation.UP:
        return mgc_pair(tile_j, tile_i, Relation.DOWN, config)
    img_i = to_float(tile_i.pixels, config.color_space)
    img_j = to_float(tile_j.pixels, config.color_space)
    if relation is Relation.DOWN:
        # Rotate both tiles 90 degrees counterclockwise: a below-neighbor
        # becomes a right-neighbor and one evaluator covers both axes.
        img_i = np.rot90(img_i, 1)
        img_j = np.rot90(img_j, 1)
    return _pair_right(img_i, img_j, config.ridge_scale)


def _table_right(imgs: np.ndarray, ridge_scale: float) -> np.ndarray:
    """All-pairs right-relation dissimilarities over a float image stack (n,S,S,3)."""
    n = imgs.shape[0]
    last = imgs[:, :, -1, :]
    last2 = imgs[:, :, -2, :]
    first = imgs[:, :, 0, :]
    first2 = imgs[:, :, 1, :]
    mu_r, vinv_r = _stats_from_samples(last - last2, ridge_scale)
    mu_l, vinv_l = _stats_from_samples(first - first2, ridge_scale)

    d = imgs[:, 1:, :, :] - imgs[:, :-1, :, :]
    dlast = d[:, :, -1, :]
    dlast2 = d[:, :, -2, :]
    dfirst = d[:, :, 0, :]
    dfirst2 = d[:, :, 1, :]
    mu_dr, vinv_dr = _stats_from_samples(dlast - dlast2, ridge_scale)
    mu_dl, vinv_dl = _stats_from_samples(dfirst - dfirst2, ridge_scale)

    gamma = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        lam = first - last[i]
        x = lam - mu_r[i]
        d_r = np.einsum("jsc,cd,jsd->j", x, vinv_r[i], x)
        x = -lam - mu_l[:, None, :]
        d_l = np.einsum("jsc,jcd,jsd->j", x, vinv_l, x)

        dlam = dfirst - dlast[i]
        x = dlam - mu_dr[i]
        dp_r = np.einsum("jsc,cd,jsd->j", x, vinv_dr[i], x)
        x = -dlam - mu_dl[:, None, :]
        dp_l = np.einsum("jsc,jcd,jsd->j", x, vinv_dl, x)
        gamma[i] = d_r + d_l + dp_r + dp_l
    np.fill_diagonal(gamma, np.inf)
    return gamma


def dissimilarity_table(tiles: list[Tile], config: CompatConfig = CompatConfig()) -> DissimilarityTable:
    """Right/Down dissimilarities for all ordered pairs; Left/Up by transposition."""
    if len(tiles) < 2:
        raise DomainError("need at least two tiles")
    sides = {t.side for t in tiles}
    if len(sides) != 1:
        raise DomainError(f"tiles must share dimensions, got sides {sorted(sides)}")
    for tile in tiles:
        _check_tile(tile, config)
    imgs = np.stack([to_float(t.pixels, config.color_space) for t in tiles])
    rotated = np.stack([np.rot90(img, 1) for img in imgs])
    gamma_right = _table_right(imgs, config.ridge_scale)
    gamma_down = _table_right(rotated, config.ridge_scale)
    return DissimilarityTable(
        gamma={
            Relation.RIGHT: gamma_right,
            Relation.DOWN: gamma_down,
            Relation.LEFT: gamma_right.T.copy(),
            Relation.UP: gamma_down.T.copy(),
        }
    )


def normalize(table: DissimilarityTable, k: int) -> CompatibilityTable:
    """Map dissimilarities to [0, 1] relative to each row's K-th smallest value."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    n = table.n
    k_eff = min(k, n - 1)
    compat = {}
    for relation, gamma in table.gamma.items():
        finite = np.where(np.isfinite(gamma), gamma, np.inf)
        kth = np.sort(finite, axis=1)[:, k_eff - 1]
        out = np.zeros_like(gamma)
        for i in range(n):
            row = finite[i]
            if kth[i] == 0.0:
                # Several perfect matches: the K-min limit keeps only them.
                out[i] = np.where(row == 0.0, 1.0, 0.0)
            else:
                out[i] = np.maximum(1.0 - row / kth[i], 0.0)
        np.fill_diagonal(out, 0.0)
        compat[relation] = out
    return CompatibilityTable(compat=compat, k=k_eff)


def compatibility_table(tiles: list[Tile], config: CompatConfig = CompatConfig()) -> CompatibilityTable:
    """dissimilarity_table + normalize in one call."""
    return normalize(dissimilarity_table(tiles, config), config.k)


RELATION_ORDER = (Relation.RIGHT, Relation.DOWN, Relation.LEFT, Relation.UP)


def tiles_checksum(tiles: list[Tile], color_space: str) -> str:
    digest = hashlib.sha256()
    digest.update(color_space.encode())
    for tile in tiles:
        digest.update(np.ascontiguousarray(tile.pixels).tobytes())
    return digest.hexdigest()


def save_dissimilarity(
    table: DissimilarityTable, path: str | Path, tiles: list[Tile], config: CompatConfig = CompatConfig()
) -> None:
    """Binary cache: one JSON header line, then the stacked relation matrices."""
    header = {
        "n": table.n,
        "relations": [r.value for r in RELATION_ORDER],
        "dtype": "<f8",
        "checksum": tiles_checksum(tiles, config.color_space),
    }
    stacked = np.stack([table.gamma[r] for r in RELATION_ORDER]).astype("<f8")
    with open(path, "wb") as fh:
        fh.write(json.dumps(header).encode() + b"\n")
        fh.write(stacked.tobytes())


def load_dissimilarity(
    path: str | Path, tiles: list[Tile], config: CompatConfig = CompatConfig()
) -> DissimilarityTable | None:
    """Load a cache written by save_dissimilarity; None if absent or stale."""
    path = Path(path)
    if not path.exists():
        return None
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode())
        if header.get("checksum") != tiles_checksum(tiles, config.color_space):
            return None
        n = header["n"]
        raw = np.frombuffer(fh.read(), dtype=header["dtype"])
    stacked = raw.reshape(len(header["relations"]), n, n)
    gamma = {
        Relation(name): stacked[idx].copy()
        for idx, name in enumerate(header["relations"])
    }
    return DissimilarityTable(gamma=gamma)
