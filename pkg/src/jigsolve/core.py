"""Domain types and grid geometry shared by the whole pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np


class DomainError(ValueError):
    """An argument is outside an operation's stated domain."""


class InvalidGeometryError(DomainError):
    """Image and grid dimensions cannot produce square tiles."""


class RepairBackendError(RuntimeError):
    """External repair adapter unreachable or protocol violated."""


class BalancingError(RuntimeError):
    """Matrix balancing hit a zero row or column sum."""


class Relation(Enum):
    """Neighbor direction on the grid: where piece j sits relative to piece i."""

    RIGHT = "right"
    LEFT = "left"
    UP = "up"
    DOWN = "down"

    @property
    def inverse(self) -> "Relation":
        return _INVERSE[self]

    @property
    def offset(self) -> tuple[int, int]:
        """(row delta, col delta) of the neighbor cell."""
        return _OFFSET[self]


_INVERSE = {
    Relation.RIGHT: Relation.LEFT,
    Relation.LEFT: Relation.RIGHT,
    Relation.UP: Relation.DOWN,
    Relation.DOWN: Relation.UP,
}

_OFFSET = {
    Relation.RIGHT: (0, 1),
    Relation.LEFT: (0, -1),
    Relation.UP: (-1, 0),
    Relation.DOWN: (1, 0),
}

RELATIONS = (Relation.RIGHT, Relation.DOWN, Relation.LEFT, Relation.UP)


@dataclass(frozen=True)
class GridGeometry:
    """Rectangular placement grid, positions indexed row-major from top-left."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise DomainError(f"grid must be positive, got {self.rows}x{self.cols}")

    @property
    def n(self) -> int:
        return self.rows * self.cols

    def row_col(self, position: int) -> tuple[int, int]:
        self._check(position)
        return divmod(position, self.cols)

    def position(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise DomainError(f"cell ({row}, {col}) outside {self.rows}x{self.cols} grid")
        return row * self.cols + col

    def neighbor(self, position: int, relation: Relation) -> Optional[int]:
        """Adjacent position in direction `relation`, or None at the grid edge."""
        row, col = self.row_col(position)
        dr, dc = relation.offset
        row, col = row + dr, col + dc
        if 0 <= row < self.rows and 0 <= col < self.cols:
            return row * self.cols + col
        return None

    def neighbor_index(self, relation: Relation) -> np.ndarray:
        """Vector of neighbor positions for every position, -1 where undefined."""
        out = np.full(self.n, -1, dtype=np.int64)
        for pos in range(self.n):
            nb = self.neighbor(pos, relation)
            if nb is not None:
                out[pos] = nb
        return out

    def _check(self, position: int) -> None:
        if not 0 <= position < self.n:
            raise DomainError(f"position {position} outside grid of {self.n} cells")


def neighbor_position(position: int, relation: Relation, geometry: GridGeometry) -> Optional[int]:
    """Grid cell adjacent to `position` in direction `relation`, None off-grid."""
    return geometry.neighbor(position, relation)


@dataclass(frozen=True)
class Tile:
    """One square puzzle piece: 8-bit RGB raster plus provenance."""

    pixels: np.ndarray
    original_index: int
    erosion_beta: float = 0.0

    def __post_init__(self) -> None:
        px = self.pixels
        if px.ndim != 3 or px.shape[2] != 3:
            raise DomainError("tile pixels must be an SxSx3 array")
        if px.shape[0] != px.shape[1]:
            raise DomainError(f"tile must be square, got {px.shape[0]}x{px.shape[1]}")
        if px.shape[0] < 4:
            raise DomainError("tile side must be at least 4 pixels")
        if px.dtype != np.uint8:
            raise DomainError(f"tile pixels must be uint8, got {px.dtype}")
        if not 0.0 <= self.erosion_beta < 0.5:
            raise DomainError(f"erosion_beta must be in [0, 0.5), got {self.erosion_beta}")
        px.setflags(write=False)

    @property
    def side(self) -> int:
        return int(self.pixels.shape[0])


@dataclass(frozen=True)
class Permutation:
    """Bijective piece -> position mapping; mapping[i] is the position of piece i."""

    mapping: tuple[int, ...]

    def __init__(self, mapping: Iterable[int]) -> None:
        object.__setattr__(self, "mapping", tuple(int(v) for v in mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise DomainError("mapping is not a permutation of 0..n-1")

    def __len__(self) -> int:
        return len(self.mapping)

    def __getitem__(self, piece: int) -> int:
        return self.mapping[piece]

    def __iter__(self):
        return iter(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for piece, pos in enumerate(self.mapping):
            inv[pos] = piece
        return Permutation(inv)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.mapping, dtype=np.int64)
