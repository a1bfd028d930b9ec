"""Synthetic source images so the pipeline runs without third-party datasets."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image
from scipy.ndimage import gaussian_filter


def gradient_image(height: int, width: int, seed: int = 0) -> np.ndarray:
    """Smooth ramps (one direction per channel) with gentle low-amplitude waves.

    The channel directions are spread (≈0/90/45 degrees) so no grid shift
    reproduces the content; the waves keep boundary covariances well
    conditioned and the mild vignette anchors absolute position. Everything
    is smooth, so true adjacencies continue almost exactly.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    yy /= max(height - 1, 1)
    xx /= max(width - 1, 1)
    base_angles = np.array([0.0, 90.0, 45.0]) + rng.uniform(-12.0, 12.0, size=3)
    bowl = (xx - 0.5) ** 2 + (yy - 0.5) ** 2
    bowl /= max(bowl.max(), 1e-12)
    img = np.empty((height, width, 3), dtype=np.float64)
    for c, degrees in enumerate(base_angles):
        theta = np.radians(degrees)
        ramp = np.cos(theta) * xx + np.sin(theta) * yy
        lo, hi = ramp.min(), ramp.max()
        ramp = (ramp - lo) / max(hi - lo, 1e-12)
        fx, fy = rng.uniform(6.3, 11.7, size=2)
        ph1, ph2 = rng.uniform(0.0, 2.0 * np.pi, size=2)
        ramp += 0.03 * np.sin(2.0 * np.pi * fx * xx + ph1) * np.sin(2.0 * np.pi * fy * yy + ph2)
        img[..., c] = ramp - 0.15 * bowl
    img -= img.min()
    img /= max(img.max(), 1e-12)
    return np.clip(np.round(10.0 + img * 235.0), 0, 255).astype(np.uint8)


def textured_image(
    height: int,
    width: int,
    seed: int = 0,
    texture_sigma: float = 2.0,
    texture_weight: float = 0.9,
    waves: int = 3,
) -> np.ndarray:
    """Natural-like image: low-frequency structure plus band-limited texture.

    The texture correlation length (~texture_sigma px) makes boundary
    continuation informative at full resolution but fragile once erosion
    opens a gap of a few pixels.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    yy /= max(height - 1, 1)
    xx /= max(width - 1, 1)
    img = np.zeros((height, width, 3), dtype=np.float64)
    for c in range(3):
        gx, gy = rng.uniform(-1.0, 1.0, size=2)
        base = gx * xx + gy * yy
        for _ in range(waves):
            fx, fy = rng.uniform(0.5, 2.5, size=2)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            base += rng.uniform(0.3, 1.0) * np.sin(2.0 * np.pi * (fx * xx + fy * yy) + phase)
        img[..., c] = base
        img[..., c] -= img[..., c].mean()
        img[..., c] /= max(img[..., c].std(), 1e-12)
    noise = rng.normal(0.0, 1.0, size=(height, width, 3))
    noise = gaussian_filter(noise, sigma=(texture_sigma, texture_sigma, 0.0))
    noise /= max(noise.std(), 1e-12)
    img += texture_weight * noise
    img -= img.min()
    img /= max(img.max(), 1e-12)
    return np.clip(np.round(5.0 + img * 245.0), 0, 255).astype(np.uint8)


def make_corpus(
    directory: str | Path,
    count: int,
    kind: str = "textured",
    height: int = 216,
    width: int = 216,
    seed: int = 0,
    **kwargs,
) -> list[Path]:
    """Write `count` PNGs named img_####.png into `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    maker = {"textured": textured_image, "gradient": gradient_image}[kind]
    paths = []
    for k in range(count):
        img = maker(height, width, seed=seed + k, **kwargs)
        path = directory / f"img_{k:04d}.png"
        Image.fromarray(img, mode="RGB").save(path)
        paths.append(path)
    return paths
