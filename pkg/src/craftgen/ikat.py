"""Ikat design pipeline.

A black-and-white motif is colorized with a primitive palette, recolored
from an inspiration image by statistical color transfer, then quantized
to an n x n grid of flat cells ready for dyeing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import ndimage

from .colors import ChannelStats, Raster, RgbColor, channel_stats, reinhard_transfer

# Mondrian-style primitive palette: white, black, red, blue, yellow.
DEFAULT_PRIMITIVES: tuple[RgbColor, ...] = (
    RgbColor(1.0, 1.0, 1.0),
    RgbColor(0.0, 0.0, 0.0),
    RgbColor(1.0, 0.0, 0.0),
    RgbColor(0.0, 0.0, 1.0),
    RgbColor(1.0, 1.0, 0.0),
)

_BLACK = np.zeros(3)

# 4-connectivity for region labeling
_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True)
class Motif:
    """A grayscale line drawing; light pixels are colorable background."""

    raster: Raster
    threshold: float = 0.5

    def __post_init__(self) -> None:
        px = self.raster.pixels
        if np.abs(px - px[..., :1]).max() > 1.0 / 255.0:
            raise ValueError("motif must be grayscale (r=g=b per pixel)")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("binarization threshold must lie in (0, 1)")

    @property
    def gray(self) -> np.ndarray:
        return self.raster.pixels[..., 0]

    def light_mask(self) -> np.ndarray:
        """Boolean mask of background (colorable) pixels."""
        return self.gray >= self.threshold


@dataclass(frozen=True)
class PrimitivePalette:
    """Small set of flat colors used for the first colorization step."""

    colors: tuple[RgbColor, ...] = DEFAULT_PRIMITIVES

    def __post_init__(self) -> None:
        if not self.colors:
            raise ValueError("palette must be non-empty")
        if len({tuple(c) for c in self.colors}) != len(self.colors):
            raise ValueError("palette colors must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.colors)


@dataclass(frozen=True, eq=False)
class GridDesign:
    """An n x n grid of flat cell colors, stored as (n, n, 3) float64."""

    cells: np.ndarray = field()

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(np.asarray(self.cells, dtype=np.float64))
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 3:
            raise ValueError(f"cells must have shape (n, n, 3), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def to_raster(self, cell_px: int = 4) -> Raster:
        """Render each cell as a cell_px x cell_px block of pixels."""
        if cell_px < 1:
            raise ValueError("cell_px must be >= 1")
        return Raster(self.cells.repeat(cell_px, axis=0).repeat(cell_px, axis=1))

    def to_csv_text(self) -> str:
        """CSV with one 'row,col,hex_color' line per cell, for loom/dye use."""
        lines = ["row,col,hex_color"]
        as_bytes = np.rint(self.cells * 255.0).astype(np.uint8)
        for row in range(self.n):
            for col in range(self.n):
                r, g, b = as_bytes[row, col]
                lines.append(f"{row},{col},#{r:02x}{g:02x}{b:02x}")
        return "\n".join(lines) + "\n"


ColorizeStage = Callable[[Motif, int], Raster]
"""Pluggable colorizer: (motif, seed) -> raster of the same dimensions.

A learned model can be slotted in here in place of the primitive colorizer.
"""


def primitive_colorize(
    motif: Motif,
    palette: PrimitivePalette = PrimitivePalette(),
    seed: int = 0,
) -> Raster:
    """Color each connected background region with a seeded palette draw.

    The motif is binarized at its threshold; 4-connected components of the
    light background each receive one palette color, and the dark motif
    lines stay black. Deterministic for a fixed (motif, palette, seed).
    """
    light = motif.light_mask()
    labels, n_regions = ndimage.label(light, structure=_CROSS)
    if n_regions == 0:
        raise ValueError("no colorable regions")
    rng = np.random.default_rng(seed)
    choices = rng.integers(0, len(palette), size=n_regions)
    palette_arr = np.asarray(palette.colors, dtype=np.float64)
    # lookup table indexed by label; label 0 is the dark background
    lut = np.vstack([_BLACK, palette_arr[choices]])
    return Raster(lut[labels])


def colorize_stage(motif: Motif, stage: ColorizeStage, seed: int = 0) -> Raster:
    """Run a pluggable colorizer and enforce the dimension contract."""
    out = stage(motif, seed)
    if (out.height, out.width) != (motif.raster.height, motif.raster.width):
        raise ValueError("stage dimension mismatch")
    return out


def transfer_from_inspiration(
    primitive: Raster,
    inspiration: Raster,
    *,
    with_clip_count: bool = False,
) -> Raster | tuple[Raster, int]:
    """Recolor a primitive-colored raster with an inspiration's LAB statistics."""
    return reinhard_transfer(
        primitive, channel_stats(inspiration), with_clip_count=with_clip_count
    )


def grid_quantize(img: Raster, n: int = 128) -> GridDesign:
    """Quantize an image to an n x n grid of mean-color cells.

    The image is partitioned into an n x n lattice of rectangles; remainder
    pixels fold into the last row/column of cells. Each cell's color is the
    mean RGB of its pixels.
    """
    if img.width < n or img.height < n:
        raise ValueError("raster smaller than grid")
    cells = np.empty((n, n, 3))
    row_edges = _cell_edges(img.height, n)
    col_edges = _cell_edges(img.width, n)
    for i in range(n):
        band = img.pixels[row_edges[i] : row_edges[i + 1]]
        for j in range(n):
            cells[i, j] = band[:, col_edges[j] : col_edges[j + 1]].reshape(-1, 3).mean(axis=0)
    return GridDesign(np.clip(cells, 0.0, 1.0))


def _cell_edges(size: int, n: int) -> np.ndarray:
    """Cell boundaries for an even split; the last cell absorbs the remainder."""
    step = size // n
    edges = np.arange(n + 1) * step
    edges[-1] = size
    return edges


def run_ikat_pipeline(
    motif: Motif,
    inspiration: Raster,
    palette: PrimitivePalette = PrimitivePalette(),
    seed: int = 0,
    n: int = 128,
    *,
    with_clip_count: bool = False,
) -> GridDesign | tuple[GridDesign, int]:
    """Full Ikat chain: primitive colorize -> color transfer -> grid quantize."""
    primitive = primitive_colorize(motif, palette, seed)
    recolored, n_clipped = transfer_from_inspiration(
        primitive, inspiration, with_clip_count=True
    )
    grid = grid_quantize(recolored, n)
    if with_clip_count:
        return grid, n_clipped
    return grid
