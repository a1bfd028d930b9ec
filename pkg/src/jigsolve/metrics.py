"""Scoring a solved permutation against ground truth."""

from __future__ import annotations

from dataclasses import dataclass

from .core import DomainError, GridGeometry, Permutation, Relation


@dataclass(frozen=True)
class Scores:
    direct: float
    neighbor: float
    perfect: bool


def _check_lengths(p: Permutation, gt: Permutation) -> None:
    if len(p) != len(gt):
        raise DomainError(f"permutation lengths differ: {len(p)} vs {len(gt)}")


def direct_accuracy(p: Permutation, gt: Permutation) -> float:
    """Fraction of pieces placed at their true position."""
    _check_lengths(p, gt)
    hits = sum(1 for a, b in zip(p, gt) if a == b)
    return hits / len(p)


def neighbor_accuracy(p: Permutation, gt: Permutation, geometry: GridGeometry) -> float:
    """Fraction of the ground truth's ordered adjacencies preserved by p.

    Every adjacent pair is counted once per direction, so the denominator is
    2*(rows*(cols-1) + (rows-1)*cols); a pair placed with the flipped relation
    scores zero.
    """
    _check_lengths(p, gt)
    if len(p) != geometry.n:
        raise DomainError("permutation length does not match geometry")
    inv_gt = gt.inverse()
    total = 0
    kept = 0
    for position in range(geometry.n):
        for relation in (Relation.RIGHT, Relation.DOWN, Relation.LEFT, Relation.UP):
            nb = geometry.neighbor(position, relation)
            if nb is None:
                continue
            total += 1
            piece_a = inv_gt[position]
            piece_b = inv_gt[nb]
            if geometry.neighbor(p[piece_a], relation) == p[piece_b]:
                kept += 1
    if total == 0:
        return 1.0
    return kept / total


def perfect(p: Permutation, gt: Permutation) -> bool:
    """True iff all pieces are in the correct position."""
    _check_lengths(p, gt)
    return tuple(p) == tuple(gt)


def score(p: Permutation, gt: Permutation, geometry: GridGeometry) -> Scores:
    return Scores(
        direct=direct_accuracy(p, gt),
        neighbor=neighbor_accuracy(p, gt, geometry),
        perfect=perfect(p, gt),
    )
