"""Deterministic offline stand-in for the pretrained extension model.

The published rightward-extension weights are a separate download; this
builder emits a SavedModel with the identical signature whose generator
continues each row's boundary gradient into the masked band. It keeps the
whole adapter (loading, signature, mask geometry, rotation trick, resizing)
exercisable on machines without the real model.
"""

from __future__ import annotations

from pathlib import Path


def build_fallback_model(
    path: str | Path, resolution: int = 257, fraction: float = 0.25
) -> Path:
    """Write the fallback SavedModel to `path` and return it."""
    import tensorflow as tf

    content_width = int(round(resolution * (1.0 - fraction)))
    band_width = resolution - content_width

    class Generator(tf.Module):
        @tf.function(
            input_signature=[tf.TensorSpec([1, resolution, resolution, 3], tf.float32)]
        )
        def extend(self, image):
            content = image[:, :, :content_width, :]
            edge = content[:, :, -1:, :]
            # two-column average keeps the per-row slope estimate stable
            grad = (content[:, :, -1:, :] - content[:, :, -3:-2, :]) / 2.0
            steps = tf.range(1.0, band_width + 1.0, dtype=tf.float32)
            band = edge + steps[tf.newaxis, tf.newaxis, :, tf.newaxis] * grad
            band = tf.clip_by_value(band, 0.0, 1.0)
            return {"default": tf.concat([content, band], axis=2)}

    module = Generator()
    path = Path(path)
    tf.saved_model.save(module, str(path), signatures={"default": module.extend})
    return path
