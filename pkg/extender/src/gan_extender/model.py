"""Wrapper around a rightward image-extension SavedModel plus the four-rotation pass.

The model contract is the TF-Hub image-extension one: a `default` signature
taking a [1, R, R, 3] float32 image in [0, 1] whose left (1 - fraction) part
is content, returning {"default": [1, R, R, 3]} with the rightmost fraction
synthesized. Tiles are resized to model resolution for each pass and the
synthesized band is resized back to tile scale, so tile geometry is exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .errors import ModelError

MODEL_ENV = "GAN_EXTENDER_MODEL"


@dataclass(frozen=True)
class ExtenderConfig:
    model_source: str
    device: str = "cpu"
    extension_fraction: float = 0.25

    def __post_init__(self) -> None:
        if not 0.0 < self.extension_fraction <= 0.5:
            raise ModelError(
                f"extension_fraction must be in (0, 0.5], got {self.extension_fraction}"
            )
        if self.device not in ("cpu", "gpu"):
            raise ModelError(f"device must be cpu or gpu, got {self.device!r}")


def resolve_model_source(explicit: str | None) -> str:
    source = explicit or os.environ.get(MODEL_ENV)
    if not source:
        raise ModelError(
            f"no model source: pass --model or set {MODEL_ENV} to a SavedModel directory"
        )
    return source


def _resize(image: np.ndarray, width: int, height: int) -> np.ndarray:
    pil = Image.fromarray(image, mode="RGB")
    return np.asarray(pil.resize((width, height), Image.BILINEAR), dtype=np.uint8)


class ExtensionModel:
    """Loaded rightward-extension generator with deterministic inference."""

    def __init__(self, config: ExtenderConfig):
        self.config = config
        if config.device == "cpu":
            os.environ.setdefault("CUDA_VISIBLE_DEVICES", "-1")
        import tensorflow as tf  # deferred: heavy import

        self._tf = tf
        source = config.model_source
        if source.startswith(("http://", "https://")):
            raise ModelError(
                "remote model handles are not supported here; download the "
                "SavedModel and pass its local directory"
            )
        if not os.path.isdir(source):
            raise ModelError(f"model source {source!r} is not a SavedModel directory")
        try:
            self._loaded = tf.saved_model.load(source)
            self._signature = self._loaded.signatures["default"]
        except Exception as exc:
            raise ModelError(f"failed to load model from {source!r}: {exc}") from exc
        specs = list(self._signature.structured_input_signature[1].values())
        if len(specs) != 1 or len(specs[0].shape) != 4:
            raise ModelError("model signature must take a single [1, R, R, 3] image")
        if specs[0].shape[1] != specs[0].shape[2]:
            raise ModelError(f"model canvas must be square, got {specs[0].shape}")
        self.resolution = int(specs[0].shape[1])
        self.content_width = int(round(self.resolution * (1.0 - config.extension_fraction)))

    def _run(self, canvas01: np.ndarray) -> np.ndarray:
        tensor = self._tf.constant(canvas01[None].astype(np.float32))
        out = self._signature(tensor)["default"].numpy()[0]
        return np.clip(out, 0.0, 1.0)

    def natural_band(self, width: int) -> int:
        """Synthesized band width at tile scale for a tile `width` columns wide."""
        fraction = self.config.extension_fraction
        return int(round(width * fraction / (1.0 - fraction)))

    def extend_right(self, image: np.ndarray, band: int | None = None) -> np.ndarray:
        """Append a synthesized band on the right of an (H, W, 3) uint8 image.

        band defaults to the model's natural extension for this width; an
        explicit smaller band keeps the columns nearest the boundary.
        """
        height, width = image.shape[:2]
        natural = self.natural_band(width)
        if band is None:
            band = natural
        if band == 0:
            return image.copy()
        if band > natural:
            raise ModelError(f"requested band {band} exceeds natural extension {natural}")
        resolution = self.resolution
        content = _resize(image, self.content_width, resolution).astype(np.float32) / 255.0
        canvas = np.zeros((resolution, resolution, 3), dtype=np.float32)
        canvas[:, : self.content_width] = content
        generated = self._run(canvas)
        band_model = generated[:, self.content_width :]
        band_scaled = _resize(
            np.clip(np.round(band_model * 255.0), 0, 255).astype(np.uint8), natural, height
        )
        return np.concatenate([image, band_scaled[:, :band]], axis=1)

    def extend_all_sides(self, image: np.ndarray, pixels: int) -> np.ndarray:
        """Grow an (S, S, 3) tile by `pixels` per side via four rotated passes.

        Pass order is right, down, left, up (the canvas is rotated 90 degrees
        counterclockwise between passes); the original center is re-pasted
        bit-exactly at the end.
        """
        if pixels < 0:
            raise ModelError(f"extension must be nonnegative, got {pixels}")
        if pixels == 0:
            return image.copy()
        side = image.shape[0]
        canvas = image
        for _ in range(4):
            canvas = self.extend_right(canvas, band=pixels)
            canvas = np.rot90(canvas, 1)
        out = np.ascontiguousarray(canvas)
        out[pixels : pixels + side, pixels : pixels + side] = image
        return out
