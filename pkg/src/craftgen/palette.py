"""Palette extraction from inspiration images.

Pipeline: uniform-bin color quantization, prominence scoring (brightness,
saturation and occupied area), bottom-quartile prominence filtering,
iterative perceptual merging of similar colors, hue-group ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colors import (
    Raster,
    RgbColor,
    ciede2000_array,
    rgb_to_hex,
    rgb_to_hsv,
    rgb_to_lab_array,
)

DEFAULT_BINS = 12
DEFAULT_MERGE_THRESHOLD = 10.0  # starting CIEDE2000 merge radius
MERGE_THRESHOLD_STEP = 2.0      # raised stepwise until the palette fits
DEFAULT_DROP_FRACTION = 0.25    # least prominent quartile is discarded
DEFAULT_MAX_COLORS = 10
HUE_BUCKET_DEGREES = 30.0


def _prominence_factor(color: RgbColor) -> float:
    """Color-only part of prominence: v * (0.5 + 0.5*s) in HSV."""
    _, s, v = rgb_to_hsv(color)
    return v * (0.5 + 0.5 * s)


@dataclass(frozen=True)
class WeightedColor:
    """A color with the image area fraction it covers and its prominence."""

    color: RgbColor
    area_fraction: float
    prominence: float = -1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.area_fraction <= 1.0 + 1e-9:
            raise ValueError("area fraction must be in [0, 1]")
        if self.prominence < 0:
            object.__setattr__(self, "prominence", prominence(self))


def prominence(c: WeightedColor) -> float:
    """Prominence = v * (0.5 + 0.5*s) * area_fraction, (s, v) from HSV.

    Monotone increasing in brightness, saturation and occupied area.
    """
    return _prominence_factor(c.color) * c.area_fraction


def quantize_colors(img: Raster, bins: int = DEFAULT_BINS) -> list[WeightedColor]:
    """Quantize an image to per-channel uniform bins.

    Each occupied bin contributes one entry whose color is the mean of the
    bin's pixels and whose area fraction is its pixel share; fractions sum
    to 1. Entries are ordered by bin index.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    flat = img.pixels.reshape(-1, 3)
    idx3 = np.minimum((flat * bins).astype(np.int64), bins - 1)
    flat_idx = (idx3[:, 0] * bins + idx3[:, 1]) * bins + idx3[:, 2]
    counts = np.bincount(flat_idx, minlength=bins**3)
    sums = np.zeros((bins**3, 3))
    for ch in range(3):
        sums[:, ch] = np.bincount(flat_idx, weights=flat[:, ch], minlength=bins**3)
    occupied = np.flatnonzero(counts)
    total = flat.shape[0]
    out = []
    for b in occupied:
        mean = sums[b] / counts[b]
        out.append(
            WeightedColor(
                color=RgbColor(float(mean[0]), float(mean[1]), float(mean[2])),
                area_fraction=counts[b] / total,
            )
        )
    return out


def _survivor_order(a: WeightedColor, b: WeightedColor) -> tuple[WeightedColor, WeightedColor]:
    """(survivor, absorbed): higher prominence wins, ties by RGB order."""
    if a.prominence != b.prominence:
        return (a, b) if a.prominence > b.prominence else (b, a)
    return (a, b) if tuple(a.color) <= tuple(b.color) else (b, a)


def merge_similar(colors: list[WeightedColor], threshold: float) -> list[WeightedColor]:
    """Merge colors closer than a CIEDE2000 threshold.

    Repeatedly takes the closest remaining pair below the threshold and
    replaces the less prominent member with the more prominent one (ties
    broken by lexicographic RGB order), summing their area fractions. The
    survivor's color never changes, so pair distances are computed once.
    Result: pairwise distances >= threshold; total area fraction preserved.
    """
    if not colors:
        raise ValueError("color list must be non-empty")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    n = len(colors)
    if n == 1:
        return list(colors)
    rgb = np.asarray([list(c.color) for c in colors])
    lab = rgb_to_lab_array(rgb[None, :, :])[0]
    dist = ciede2000_array(np.repeat(lab, n, axis=0), np.tile(lab, (n, 1))).reshape(n, n)
    np.fill_diagonal(dist, np.inf)

    fractions = np.array([c.area_fraction for c in colors])
    factors = np.array([_prominence_factor(c.color) for c in colors])
    alive = np.ones(n, dtype=bool)
    while True:
        flat = np.argmin(dist)
        i, j = np.unravel_index(flat, dist.shape)
        if dist[i, j] >= threshold:
            break
        a = WeightedColor(colors[i].color, fractions[i], factors[i] * fractions[i])
        b = WeightedColor(colors[j].color, fractions[j], factors[j] * fractions[j])
        keep, drop = (i, j) if _survivor_order(a, b)[0] is a else (j, i)
        fractions[keep] += fractions[drop]
        alive[drop] = False
        dist[drop, :] = np.inf
        dist[:, drop] = np.inf
    return [
        WeightedColor(colors[k].color, float(fractions[k]), float(factors[k] * fractions[k]))
        for k in range(n)
        if alive[k]
    ]


def hue_bucket(color: RgbColor, width_deg: float = HUE_BUCKET_DEGREES) -> int:
    h, _, _ = rgb_to_hsv(color)
    return int(h // width_deg) % max(1, int(round(360.0 / width_deg)))


@dataclass(frozen=True)
class Palette:
    """An ordered palette of 1 to 10 colors with their area fractions.

    Colors are grouped by hue bucket and ordered by descending prominence
    within each group; all pairwise perceptual distances clear the merge
    threshold recorded at extraction time.
    """

    colors: tuple[RgbColor, ...]
    area_fractions: tuple[float, ...]
    merge_threshold: float = DEFAULT_MERGE_THRESHOLD

    def __post_init__(self) -> None:
        if not 1 <= len(self.colors) <= DEFAULT_MAX_COLORS:
            raise ValueError("palette must hold between 1 and 10 colors")
        if len(self.colors) != len(self.area_fractions):
            raise ValueError("colors and area fractions must align")

    def __len__(self) -> int:
        return len(self.colors)

    def to_json_dict(self) -> dict:
        return {
            "format": "craftgen-palette/1",
            "colors": [rgb_to_hex(c) for c in self.colors],
            "area_fractions": list(self.area_fractions),
            "merge_threshold": self.merge_threshold,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Palette":
        from .colors import hex_to_rgb

        return cls(
            colors=tuple(hex_to_rgb(h) for h in doc["colors"]),
            area_fractions=tuple(float(f) for f in doc["area_fractions"]),
            merge_threshold=float(doc.get("merge_threshold", DEFAULT_MERGE_THRESHOLD)),
        )


def extract_palette(
    img: Raster,
    max_colors: int = DEFAULT_MAX_COLORS,
    bins: int = DEFAULT_BINS,
    base_threshold: float = DEFAULT_MERGE_THRESHOLD,
    drop_fraction: float = DEFAULT_DROP_FRACTION,
) -> Palette:
    """Extract a palette of at most ``max_colors`` colors from an image.

    Steps: quantize to uniform bins; drop the least prominent quarter of
    the bins and renormalize the surviving fractions; merge perceptually
    similar colors, raising the threshold stepwise until the palette fits;
    order by hue bucket, then by descending prominence within each bucket.
    """
    if not 1 <= max_colors <= DEFAULT_MAX_COLORS:
        raise ValueError("max_colors must be in [1, 10]")
    entries = quantize_colors(img, bins)

    n_drop = int(len(entries) * drop_fraction)
    if n_drop and len(entries) - n_drop >= 1:
        order = sorted(entries, key=lambda c: (c.prominence, tuple(c.color)))
        kept = order[n_drop:]
        total = sum(c.area_fraction for c in kept)
        entries = [WeightedColor(c.color, c.area_fraction / total) for c in kept]

    threshold = base_threshold
    merged = merge_similar(entries, threshold)
    while len(merged) > max_colors:
        threshold += MERGE_THRESHOLD_STEP
        merged = merge_similar(merged, threshold)

    merged.sort(key=lambda c: (hue_bucket(c.color), -c.prominence, tuple(c.color)))
    return Palette(
        colors=tuple(c.color for c in merged),
        area_fractions=tuple(c.area_fraction for c in merged),
        merge_threshold=threshold,
    )


def palette_lab_matrix(p: Palette) -> np.ndarray:
    """(n, 3) CIELAB rows for a palette, in palette order."""
    rgb = np.asarray([list(c) for c in p.colors])
    return rgb_to_lab_array(rgb[None, :, :])[0]


def min_pairwise_delta_e(p: Palette) -> float:
    """Smallest CIEDE2000 distance between any two palette colors."""
    if len(p) < 2:
        return math.inf
    lab = palette_lab_matrix(p)
    n = len(p)
    d = ciede2000_array(np.repeat(lab, n, axis=0), np.tile(lab, (n, 1))).reshape(n, n)
    np.fill_diagonal(d, np.inf)
    return float(d.min())
