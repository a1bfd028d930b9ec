"""Independent brute-force reference implementations used to pin expected values.

Everything here is written as plain loops over the defining formulas, kept
deliberately separate from the vectorized library paths it checks.
"""

from __future__ import annotations

import itertools

import numpy as np

from jigsolve.core import GridGeometry, Permutation, Relation


def brute_mean_cov(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean and covariance (ddof=1) of (S, 3) rows, by explicit loops."""
    count, dim = samples.shape
    mu = np.zeros(dim)
    for s in range(count):
        mu += samples[s]
    mu /= count
    cov = np.zeros((dim, dim))
    for s in range(count):
        d = samples[s] - mu
        for a in range(dim):
            for b in range(dim):
                cov[a, b] += d[a] * d[b]
    cov /= count - 1
    return mu, cov


def _brute_stats(samples: np.ndarray, ridge_scale: float) -> tuple[np.ndarray, np.ndarray]:
    mu, cov = brute_mean_cov(samples)
    trace = cov[0, 0] + cov[1, 1] + cov[2, 2]
    eps = ridge_scale * max(trace / 3.0, 1.0)
    return mu, np.linalg.inv(cov + eps * np.eye(3))


def _brute_quadratic(diffs: np.ndarray, mu: np.ndarray, vinv: np.ndarray) -> float:
    total = 0.0
    for s in range(diffs.shape[0]):
        x = diffs[s] - mu
        total += float(x @ vinv @ x)
    return total


def _brute_right(img_i: np.ndarray, img_j: np.ndarray, ridge_scale: float) -> float:
    side = img_i.shape[0]
    gi = np.array([img_i[s, -1] - img_i[s, -2] for s in range(side)])
    gj = np.array([img_j[s, 0] - img_j[s, 1] for s in range(side)])
    mu_i, vinv_i = _brute_stats(gi, ridge_scale)
    mu_j, vinv_j = _brute_stats(gj, ridge_scale)
    lam = np.array([img_j[s, 0] - img_i[s, -1] for s in range(side)])
    total = _brute_quadratic(lam, mu_i, vinv_i)
    total += _brute_quadratic(-lam, mu_j, vinv_j)

    di = np.array([[img_i[u, v] - img_i[u - 1, v] for v in range(side)] for u in range(1, side)])
    dj = np.array([[img_j[u, v] - img_j[u - 1, v] for v in range(side)] for u in range(1, side)])
    dgi = np.array([di[s, -1] - di[s, -2] for s in range(side - 1)])
    dgj = np.array([dj[s, 0] - dj[s, 1] for s in range(side - 1)])
    mu_di, vinv_di = _brute_stats(dgi, ridge_scale)
    mu_dj, vinv_dj = _brute_stats(dgj, ridge_scale)
    dlam = np.array([dj[s, 0] - di[s, -1] for s in range(side - 1)])
    total += _brute_quadratic(dlam, mu_di, vinv_di)
    total += _brute_quadratic(-dlam, mu_dj, vinv_dj)
    return total


def _rot_ccw(img: np.ndarray) -> np.ndarray:
    side = img.shape[0]
    out = np.empty_like(img)
    for r in range(side):
        for c in range(side):
            out[r, c] = img[c, side - 1 - r]
    return out


def brute_mgc(
    img_i: np.ndarray, img_j: np.ndarray, relation: Relation, ridge_scale: float = 1e-6
) -> float:
    """Dissimilarity over float images by the defining sums, all relations."""
    if relation is Relation.LEFT:
        return brute_mgc(img_j, img_i, Relation.RIGHT, ridge_scale)
    if relation is Relation.UP:
        return brute_mgc(img_j, img_i, Relation.DOWN, ridge_scale)
    if relation is Relation.DOWN:
        return _brute_right(_rot_ccw(img_i), _rot_ccw(img_j), ridge_scale)
    return _brute_right(img_i, img_j, ridge_scale)


def brute_support(p: np.ndarray, c: dict[Relation, np.ndarray], geometry: GridGeometry) -> np.ndarray:
    """Contextual support via the dense quadruple loop over (i, lambda, j, mu)."""
    n = p.shape[0]
    m = geometry.n
    q = np.zeros((n, m))
    for i in range(n):
        for lam in range(m):
            for j in range(n):
                if j == i:
                    continue
                for mu in range(m):
                    for relation, matrix in c.items():
                        if geometry.neighbor(lam, relation) == mu:
                            q[i, lam] += matrix[i, j] * p[j, mu]
    return q


def brute_assignment(p: np.ndarray) -> Permutation:
    """Maximize sum p[i, sigma(i)] by enumerating permutations lexicographically."""
    n = p.shape[0]
    best_value = -np.inf
    best = None
    for perm in itertools.permutations(range(n)):
        value = float(sum(p[i, perm[i]] for i in range(n)))
        if value > best_value:
            best_value = value
            best = perm
    return Permutation(best)


def brute_neighbor_accuracy(p: Permutation, gt: Permutation, geometry: GridGeometry) -> float:
    """Ordered-adjacency survival fraction by explicit pair enumeration."""
    pos_of_piece_gt = {piece: gt[piece] for piece in range(len(gt))}
    piece_at_gt = {pos: piece for piece, pos in pos_of_piece_gt.items()}
    total = 0
    kept = 0
    for pos in range(geometry.n):
        row, col = divmod(pos, geometry.cols)
        for drow, dcol in ((0, 1), (0, -1), (1, 0), (-1, 0)):
            r2, c2 = row + drow, col + dcol
            if not (0 <= r2 < geometry.rows and 0 <= c2 < geometry.cols):
                continue
            total += 1
            a = piece_at_gt[pos]
            b = piece_at_gt[r2 * geometry.cols + c2]
            pa, pb = p[a], p[b]
            ra, ca = divmod(pa, geometry.cols)
            rb, cb = divmod(pb, geometry.cols)
            if (rb - ra, cb - ca) == (drow, dcol):
                kept += 1
    return kept / total if total else 1.0
