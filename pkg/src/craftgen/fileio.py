"""File input and output: images, design documents, models, reports.

Every write goes to a temp file in the destination directory followed by
an atomic rename, so failing commands never leave partial output files.
"""

from __future__ import annotations

import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from .blockprint import Pattern, render_pattern
from .colors import Raster
from .palette import Palette


def write_bytes(path: str | Path, data: bytes) -> None:
    """Write via temp file + rename so readers never see partial content."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_text(path: str | Path, text: str) -> None:
    write_bytes(path, text.encode("utf-8"))


def write_json(path: str | Path, doc: dict) -> None:
    write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_json(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def read_text(path: str | Path) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_image(path: str | Path) -> Raster:
    """Load any Pillow-readable image as an RGB raster in [0, 1]."""
    with Image.open(path) as img:
        rgb = np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
    return Raster(rgb)


def png_bytes(raster: Raster) -> bytes:
    as_bytes = np.rint(raster.pixels * 255.0).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(as_bytes, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def save_png(raster: Raster, path: str | Path) -> None:
    write_bytes(path, png_bytes(raster))


# ---------------------------------------------------------------------------
# replayable design documents: pattern + palette + render size in one JSON

def make_design_doc(pattern: Pattern, palette: Palette, px: int) -> dict:
    return {
        "format": "craftgen-design/1",
        "pattern": pattern.to_json_dict(),
        "palette": palette.to_json_dict(),
        "px": int(px),
    }


def is_design_doc(doc: dict) -> bool:
    return isinstance(doc, dict) and doc.get("format") == "craftgen-design/1"


def render_design_doc(doc: dict) -> Raster:
    """Re-render a design document; identical pixels for identical docs."""
    if not is_design_doc(doc):
        raise ValueError("not a design document")
    pattern = Pattern.from_json_dict(doc["pattern"])
    palette = Palette.from_json_dict(doc["palette"])
    return render_pattern(pattern, palette.colors, int(doc["px"]))


def load_design_doc(path: str | Path) -> dict:
    doc = read_json(path)
    if not is_design_doc(doc):
        raise ValueError(f"not a design document: {path}")
    return doc
