"""Placement as consistent labeling: relaxation updates with Sinkhorn balancing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .compatibility import CompatibilityTable
from .core import BalancingError, DomainError, GridGeometry, Permutation, Relation


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    init_jitter: float = 1e-3
    max_iters: int = 1000
    sk_sweeps: int = 10
    sk_tol: float = 1e-6
    stop_tol: float = 1e-3
    symmetrize: bool = False
    anchor: Optional[tuple[int, int]] = None  # (piece, position), off by default


@dataclass(frozen=True)
class IterationStats:
    max_row_entropy: float
    consistency: float
    permutation_distance: float

    def to_dict(self) -> dict:
        return {
            "max_row_entropy": self.max_row_entropy,
            "consistency": self.consistency,
            "permutation_distance": self.permutation_distance,
        }


@dataclass(frozen=True)
class SolveReport:
    """Final permutation plus the per-iteration trace of the relaxation."""

    final_assignment: Permutation
    iterations: int
    trace: tuple[IterationStats, ...]
    converged: bool
    assignment: np.ndarray = field(repr=False, compare=False, default=None)

    def to_dict(self) -> dict:
        return {
            "final_assignment": list(self.final_assignment),
            "iterations": self.iterations,
            "converged": self.converged,
            "trace": [t.to_dict() for t in self.trace],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SolveReport":
        return cls(
            final_assignment=Permutation(data["final_assignment"]),
            iterations=int(data["iterations"]),
            trace=tuple(IterationStats(**t) for t in data["trace"]),
            converged=bool(data["converged"]),
        )


@dataclass(frozen=True)
class CompatTensor:
    """Sparse r_{ij,lambda,mu}: per relation, C_R(i,j) wherever mu = neighbor_R(lambda)."""

    c: dict[Relation, np.ndarray]
    geometry: GridGeometry
    neighbor_index: dict[Relation, np.ndarray]

    @property
    def n(self) -> int:
        return self.geometry.n

    def dense(self) -> np.ndarray:
        """Materialize r as an (n, n, m, m) array; for oracles and small grids."""
        n = m = self.n
        r = np.zeros((n, n, m, m))
        for relation, c in self.c.items():
            idx = self.neighbor_index[relation]
            for lam in range(m):
                if idx[lam] >= 0:
                    r[:, :, lam, idx[lam]] += c
        for i in range(n):
            r[i, i, :, :] = 0.0
        return r


def build_compat_tensor(
    compat: CompatibilityTable, geometry: GridGeometry, symmetrize: bool = False
) -> CompatTensor:
    """Wire the four compatibility matrices onto the grid adjacency."""
    missing = [r for r in Relation if r not in compat.compat]
    if missing:
        raise DomainError(f"compatibility table missing relations {missing}")
    if compat.n != geometry.n:
        raise DomainError(
            f"table for {compat.n} pieces does not fit a {geometry.rows}x{geometry.cols} grid"
        )
    c = {relation: np.array(compat.compat[relation], dtype=np.float64) for relation in Relation}
    for relation in Relation:
        np.fill_diagonal(c[relation], 0.0)
        if np.any(c[relation] < 0):
            raise DomainError("compatibilities must be nonnegative")
    if symmetrize:
        # r <- (r + r^T)/2 with the tensor transpose swapping (i,lam) and (j,mu);
        # per relation this averages C_R(i,j) with C_{R^-1}(j,i).
        c = {
            relation: 0.5 * (c[relation] + c[relation.inverse].T)
            for relation in Relation
        }
    index = {relation: geometry.neighbor_index(relation) for relation in Relation}
    return CompatTensor(c=c, geometry=geometry, neighbor_index=index)


def support(p: np.ndarray, tensor: CompatTensor) -> np.ndarray:
    """Contextual support q_{i,lambda} = sum_R sum_j C_R(i,j) p_{j,neighbor_R(lambda)}."""
    if p.shape != (tensor.n, tensor.n):
        raise DomainError(f"assignment shape {p.shape} does not match n={tensor.n}")
    q = np.zeros_like(p)
    for relation, c in tensor.c.items():
        idx = tensor.neighbor_index[relation]
        defined = idx >= 0
        q[:, defined] += c @ p[:, idx[defined]]
    return q


def rl_step(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Multiplicative row update p*q / row-sum; rows with vanishing mass stay put."""
    if np.any(q < 0):
        raise DomainError("support must be nonnegative")
    pq = p * q
    denom = pq.sum(axis=1)
    out = np.where(denom[:, None] < 1e-12, p, pq / np.maximum(denom, 1e-300)[:, None])
    return out


def sinkhorn(p: np.ndarray, max_sweeps: int = 50, tol: float = 1e-6) -> np.ndarray:
    """Alternate row/column normalization toward a doubly stochastic matrix."""
    if max_sweeps < 1:
        raise DomainError(f"max_sweeps must be >= 1, got {max_sweeps}")
    if np.any(p < 0):
        raise DomainError("matrix must be nonnegative")
    p = np.array(p, dtype=np.float64)
    for _ in range(max_sweeps):
        rows = p.sum(axis=1)
        if np.any(rows <= 0.0):
            raise BalancingError("row sum collapsed to zero during balancing")
        p /= rows[:, None]
        cols = p.sum(axis=0)
        if np.any(cols <= 0.0):
            raise BalancingError("column sum collapsed to zero during balancing")
        p /= cols[None, :]
        row_dev = np.abs(p.sum(axis=1) - 1.0).max()
        col_dev = np.abs(p.sum(axis=0) - 1.0).max()
        if max(row_dev, col_dev) <= tol:
            break
    return p


def discretize(p: np.ndarray) -> Permutation:
    """Permutation maximizing the selected assignment mass.

    Ties break toward the lexicographically smallest mapping (lowest piece
    index chooses the lowest position); detected with a penalized re-solve so
    the common unique-optimum case stays a single assignment call.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DomainError(f"expected a square matrix, got {p.shape}")
    if np.any(p < 0):
        raise DomainError("matrix must be nonnegative")
    n = p.shape[0]
    if n == 1:
        return Permutation([0])
    rows, cols = linear_sum_assignment(p, maximize=True)
    best = float(p[rows, cols].sum())
    probe = p.copy()
    probe[rows, cols] -= 1e-12 * max(1.0, float(p.max()))
    _, cols2 = linear_sum_assignment(probe, maximize=True)
    if np.array_equal(cols, cols2):
        return Permutation(cols)
    return _lexicographic_assignment(p, best)


def _lexicographic_assignment(p: np.ndarray, best: float) -> Permutation:
    n = p.shape[0]
    tol = 1e-9 * max(1.0, abs(best))
    remaining = list(range(n))
    chosen: list[int] = []
    prefix = 0.0
    for i in range(n):
        rest = np.arange(i + 1, n)
        picked = None
        fallback_value, fallback_pos = -np.inf, remaining[0]
        for pos in remaining:
            tail = 0.0
            if rest.size:
                others = [c for c in remaining if c != pos]
                sub = p[np.ix_(rest, others)]
                rr, cc = linear_sum_assignment(sub, maximize=True)
                tail = float(sub[rr, cc].sum())
            value = prefix + p[i, pos] + tail
            if value >= best - tol:
                picked = pos
                break
            if value > fallback_value:
                fallback_value, fallback_pos = value, pos
        if picked is None:
            picked = fallback_pos
        chosen.append(picked)
        prefix += p[i, picked]
        remaining.remove(picked)
    return Permutation(chosen)


def _iteration_stats(p: np.ndarray, q: np.ndarray) -> IterationStats:
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > 0, p * np.log(p), 0.0)
    entropy = float((-plogp.sum(axis=1)).max())
    consistency = float((p * q).sum())
    rows, cols = linear_sum_assignment(p, maximize=True)
    distance = 1.0 - float(p[rows, cols].sum()) / p.shape[0]
    return IterationStats(
        max_row_entropy=entropy, consistency=consistency, permutation_distance=distance
    )


def _apply_anchor(p: np.ndarray, anchor: Optional[tuple[int, int]]) -> np.ndarray:
    if anchor is None:
        return p
    piece, position = anchor
    p = p.copy()
    p[piece, :] = 0.0
    p[piece, position] = 1.0
    return p


def solve(
    compat: CompatibilityTable, geometry: GridGeometry, config: SolverConfig = SolverConfig()
) -> SolveReport:
    """Relaxation labeling from the jittered barycenter down to a permutation."""
    tensor = build_compat_tensor(compat, geometry, symmetrize=config.symmetrize)
    n = geometry.n
    rng = np.random.default_rng(config.seed)
    p = np.full((n, n), 1.0 / n)
    if config.init_jitter > 0.0:
        p = p * (1.0 + rng.uniform(-config.init_jitter, config.init_jitter, size=(n, n)))
    p = _apply_anchor(p, config.anchor)
    if config.sk_sweeps > 0:
        p = sinkhorn(p, config.sk_sweeps, config.sk_tol)
    trace: list[IterationStats] = []
    converged = False
    for _ in range(config.max_iters):
        if float(np.max(1.0 - p.max(axis=1))) < config.stop_tol:
            converged = True
            break
        q = support(p, tensor)
        trace.append(_iteration_stats(p, q))
        p = rl_step(p, q)
        p = _apply_anchor(p, config.anchor)
        if config.sk_sweeps > 0:
            p = sinkhorn(p, config.sk_sweeps, config.sk_tol)
    else:
        converged = float(np.max(1.0 - p.max(axis=1))) < config.stop_tol
    return SolveReport(
        final_assignment=discretize(p),
        iterations=len(trace),
        trace=tuple(trace),
        converged=converged,
        assignment=p,
    )
