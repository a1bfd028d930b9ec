"""Restore eroded tiles to full size with analytic extrapolators or an external adapter."""

from __future__ import annotations

import json
import shlex
import subprocess
import tempfile
import urllib.request
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from PIL import Image

from .core import DomainError, RepairBackendError, Tile
from .generate import PuzzleInstance

BUILTIN_KINDS = ("none", "replicate", "mirror", "linear")
ADAPTER_TIMEOUT_S = 600.0


@dataclass(frozen=True)
class RepairMethod:
    """How to synthesize the missing border band.

    kind is one of none|replicate|mirror|linear|external; external carries the
    adapter as either a subprocess command line or an http(s) endpoint.
    """

    kind: str
    adapter: str | None = None
    rotate_trick: bool = True

    def __post_init__(self) -> None:
        if self.kind not in BUILTIN_KINDS + ("external",):
            raise DomainError(f"unknown repair method {self.kind!r}")
        if self.kind == "external" and not self.adapter:
            raise DomainError("external repair needs an adapter command or endpoint")

    @classmethod
    def none(cls) -> "RepairMethod":
        return cls("none")

    @classmethod
    def replicate(cls) -> "RepairMethod":
        return cls("replicate")

    @classmethod
    def mirror(cls) -> "RepairMethod":
        return cls("mirror")

    @classmethod
    def linear(cls) -> "RepairMethod":
        return cls("linear")

    @classmethod
    def external(cls, adapter: str, rotate_trick: bool = True) -> "RepairMethod":
        return cls("external", adapter=adapter, rotate_trick=rotate_trick)

    @classmethod
    def parse(cls, text: str, adapter: str | None = None) -> "RepairMethod":
        """Parse "linear", "external", or "external:<command or url>"."""
        text = text.strip()
        if text in BUILTIN_KINDS:
            return cls(text)
        if text == "external":
            return cls("external", adapter=adapter)
        if text.startswith("external:"):
            return cls("external", adapter=text.split(":", 1)[1])
        raise DomainError(f"unknown repair method {text!r}")


def _extend_rows_linear(pixels: np.ndarray, e: int) -> np.ndarray:
    """Continue each row's last one-pixel difference e steps on both sides."""
    work = pixels.astype(np.int32)
    steps = np.arange(1, e + 1, dtype=np.int32)
    right_d = work[:, -1, :] - work[:, -2, :]
    right = work[:, -1:, :] + steps[None, :, None] * right_d[:, None, :]
    left_d = work[:, 0, :] - work[:, 1, :]
    left = work[:, 0:1, :] + steps[None, ::-1, None] * left_d[:, None, :]
    out = np.concatenate([left, work, right], axis=1)
    return np.clip(out, 0, 255).astype(np.uint8)


def _repair_builtin(pixels: np.ndarray, e: int, kind: str) -> np.ndarray:
    if kind == "replicate":
        return np.pad(pixels, ((e, e), (e, e), (0, 0)), mode="edge")
    if kind == "mirror":
        if e > pixels.shape[0]:
            raise DomainError(f"mirror repair needs e <= side, got e={e}")
        return np.pad(pixels, ((e, e), (e, e), (0, 0)), mode="symmetric")
    if kind == "linear":
        # Horizontal pass first, then vertical over the widened tile, so the
        # corner bands are fully defined.
        wide = _extend_rows_linear(pixels, e)
        tall = _extend_rows_linear(wide.transpose(1, 0, 2), e)
        return tall.transpose(1, 0, 2)
    raise DomainError(f"no builtin repair for kind {kind!r}")


def repair_tile(tile: Tile, e: int, method: RepairMethod) -> Tile:
    """Extend a tile by e pixels per side; the central block stays bit-exact."""
    if e < 0:
        raise DomainError(f"extension must be nonnegative, got {e}")
    if e == 0:
        return tile
    if method.kind == "none":
        raise DomainError("method 'none' cannot synthesize border pixels (e > 0)")
    if method.kind == "external":
        return repair_tiles_external([tile], e, method)[0]
    out = _repair_builtin(tile.pixels, e, method.kind)
    return Tile(out, original_index=tile.original_index, erosion_beta=0.0)


def repair_instance(instance: PuzzleInstance, method: RepairMethod) -> PuzzleInstance:
    """Repair every tile of an instance with e = erosion_pixels_per_side.

    method 'none' (the no-extension baseline) leaves the instance untouched:
    downstream compatibility must then be run with its eroded-tiles bypass.
    """
    e = instance.erosion_pixels_per_side
    if e == 0 or method.kind == "none":
        return instance
    if method.kind == "external":
        tiles = tuple(repair_tiles_external(list(instance.tiles), e, method))
    else:
        tiles = tuple(repair_tile(t, e, method) for t in instance.tiles)
    return replace(instance, tiles=tiles, beta=0.0, erosion_pixels_per_side=0)


def write_request(directory: str | Path, tiles: list[Tile], e: int, rotate_trick: bool) -> Path:
    """Write the request half of the file-based repair protocol."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for k, tile in enumerate(tiles):
        name = f"{k:04d}.png"
        Image.fromarray(tile.pixels, mode="RGB").save(directory / name)
        entries.append({"id": k, "file": name})
    request = {"extension_pixels": e, "tiles": entries, "rotate_trick": rotate_trick}
    (directory / "request.json").write_text(json.dumps(request, indent=2))
    return directory


def read_response(directory: str | Path, tiles: list[Tile], e: int) -> list[Tile]:
    """Read and validate the response half; raises RepairBackendError on violations."""
    directory = Path(directory)
    response_path = directory / "response.json"
    if not response_path.exists():
        raise RepairBackendError(f"adapter wrote no response.json in {directory}")
    try:
        response = json.loads(response_path.read_text())
    except json.JSONDecodeError as exc:
        raise RepairBackendError(f"malformed response.json: {exc}") from exc
    by_id = {entry.get("id"): entry for entry in response.get("tiles", [])}
    expected_side = tiles[0].side + 2 * e
    out = []
    for k, tile in enumerate(tiles):
        entry = by_id.get(k)
        if entry is None:
            raise RepairBackendError(f"adapter response missing tile id {k}")
        if entry.get("status", "ok") != "ok":
            raise RepairBackendError(f"adapter failed on tile id {k}: {entry.get('status')}")
        file_path = directory / entry["file"]
        if not file_path.exists():
            raise RepairBackendError(f"adapter response missing file for id {k}")
        pixels = np.asarray(Image.open(file_path).convert("RGB"), dtype=np.uint8)
        if pixels.shape[0] != expected_side or pixels.shape[1] != expected_side:
            raise RepairBackendError(
                f"tile id {k}: adapter returned {pixels.shape[0]}x{pixels.shape[1]}, "
                f"expected {expected_side}x{expected_side}"
            )
        # Guarantee center preservation regardless of the adapter.
        pixels = pixels.copy()
        pixels[e : e + tile.side, e : e + tile.side] = tile.pixels
        out.append(Tile(pixels, original_index=tile.original_index, erosion_beta=0.0))
    return out


def _invoke_adapter(adapter: str, request_dir: Path, response_dir: Path) -> None:
    if adapter.startswith(("http://", "https://")):
        payload = json.dumps(
            {"request_dir": str(request_dir), "response_dir": str(response_dir)}
        ).encode()
        req = urllib.request.Request(
            adapter, data=payload, headers={"Content-Type": "application/json"}
        )
        try:
            with urllib.request.urlopen(req, timeout=ADAPTER_TIMEOUT_S) as resp:
                if resp.status != 200:
                    raise RepairBackendError(f"adapter endpoint returned {resp.status}")
        except OSError as exc:
            raise RepairBackendError(f"adapter endpoint unreachable: {exc}") from exc
        return
    command = shlex.split(adapter) + [
        "--request",
        str(request_dir),
        "--response",
        str(response_dir),
    ]
    try:
        proc = subprocess.run(command, capture_output=True, timeout=ADAPTER_TIMEOUT_S)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise RepairBackendError(f"adapter command failed to run: {exc}") from exc
    if proc.returncode != 0:
        tail = proc.stderr.decode(errors="replace")[-500:]
        raise RepairBackendError(f"adapter exited with {proc.returncode}: {tail}")


def repair_tiles_external(tiles: list[Tile], e: int, method: RepairMethod) -> list[Tile]:
    """One batched request through the file protocol to the configured adapter."""
    if method.kind != "external":
        raise DomainError("repair_tiles_external requires an external method")
    with tempfile.TemporaryDirectory(prefix="jigsolve-repair-") as tmp:
        request_dir = Path(tmp) / "request"
        response_dir = Path(tmp) / "response"
        response_dir.mkdir()
        write_request(request_dir, tiles, e, method.rotate_trick)
        _invoke_adapter(method.adapter, request_dir, response_dir)
        return read_response(response_dir, tiles, e)
