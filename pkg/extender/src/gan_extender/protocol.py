"""File-based repair protocol: read request/, extend every tile, write response/."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ModelError, ProtocolError
from .model import ExtenderConfig, ExtensionModel


def load_request(request_dir: str | Path) -> dict:
    request_path = Path(request_dir) / "request.json"
    if not request_path.exists():
        raise ProtocolError(f"no request.json under {request_dir}")
    try:
        request = json.loads(request_path.read_text())
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"malformed request.json: {exc}") from exc
    for key in ("extension_pixels", "tiles"):
        if key not in request:
            raise ProtocolError(f"request.json missing {key!r}")
    return request


def handle_request(
    request_dir: str | Path,
    response_dir: str | Path,
    config: ExtenderConfig,
    model: ExtensionModel | None = None,
) -> bool:
    """Process one batch. Returns True iff every tile succeeded.

    A response.json is always written: model failures are reported per tile in
    its status fields so the client sees a complete protocol answer.
    """
    request_dir = Path(request_dir)
    response_dir = Path(response_dir)
    response_dir.mkdir(parents=True, exist_ok=True)
    request = load_request(request_dir)
    pixels_per_side = int(request["extension_pixels"])
    rotate_trick = bool(request.get("rotate_trick", True))

    load_error: str | None = None
    if model is None:
        try:
            model = ExtensionModel(config)
        except ModelError as exc:
            load_error = str(exc)
    if not rotate_trick and load_error is None:
        load_error = "model extends rightward only; rotate_trick=false is unsupported"

    entries = []
    all_ok = True
    for item in request["tiles"]:
        tile_id = item.get("id")
        name = item.get("file", f"{tile_id:04d}.png")
        if load_error is not None:
            entries.append({"id": tile_id, "file": name, "status": f"error: {load_error}"})
            all_ok = False
            continue
        try:
            image = np.asarray(
                Image.open(request_dir / name).convert("RGB"), dtype=np.uint8
            )
            out = model.extend_all_sides(image, pixels_per_side)
            Image.fromarray(out, mode="RGB").save(response_dir / name)
            entries.append({"id": tile_id, "file": name, "status": "ok"})
        except Exception as exc:
            entries.append({"id": tile_id, "file": name, "status": f"error: {exc}"})
            all_ok = False
    (response_dir / "response.json").write_text(json.dumps({"tiles": entries}, indent=2))
    return all_ok
