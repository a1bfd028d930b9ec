"""Local test utilities: request-dir builder and a small image generator.

Deliberately standalone so these tests exercise the solver package only
through its public command line and file interfaces.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image
from scipy.ndimage import gaussian_filter


def write_request_dir(
    directory: Path, tiles: list[np.ndarray], pixels: int, rotate_trick: bool = True
) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for k, tile in enumerate(tiles):
        name = f"{k:04d}.png"
        Image.fromarray(tile, mode="RGB").save(directory / name)
        entries.append({"id": k, "file": name})
    request = {"extension_pixels": pixels, "tiles": entries, "rotate_trick": rotate_trick}
    (directory / "request.json").write_text(json.dumps(request))
    return directory


def smooth_textured_image(height: int, width: int, seed: int) -> np.ndarray:
    """Band-limited texture over low-frequency structure (uint8 RGB)."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    yy /= max(height - 1, 1)
    xx /= max(width - 1, 1)
    img = np.zeros((height, width, 3))
    for c in range(3):
        gx, gy = rng.uniform(-1.0, 1.0, size=2)
        base = gx * xx + gy * yy
        for _ in range(3):
            fx, fy = rng.uniform(0.5, 2.5, size=2)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            base += rng.uniform(0.3, 1.0) * np.sin(2 * np.pi * (fx * xx + fy * yy) + phase)
        img[..., c] = (base - base.mean()) / max(base.std(), 1e-12)
    noise = gaussian_filter(rng.normal(0.0, 1.0, size=(height, width, 3)), sigma=(2, 2, 0))
    img += 0.9 * noise / max(noise.std(), 1e-12)
    img -= img.min()
    img /= max(img.max(), 1e-12)
    return np.clip(np.round(5 + img * 245), 0, 255).astype(np.uint8)


def write_corpus(directory: Path, count: int, height: int, width: int, seed: int) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for k in range(count):
        img = smooth_textured_image(height, width, seed + k)
        Image.fromarray(img, mode="RGB").save(directory / f"img_{k:04d}.png")
