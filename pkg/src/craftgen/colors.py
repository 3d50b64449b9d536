"""Color-space math shared by every pipeline stage.

sRGB (D65) <-> CIELAB <-> HSV conversions, the CIEDE2000 color difference,
per-channel LAB statistics and statistical (Reinhard-style) color transfer.
Images are carried as float64 RGB in [0, 1]; all functions here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class RgbColor(NamedTuple):
    """Gamma-encoded sRGB triple, each channel in [0, 1]."""

    r: float
    g: float
    b: float


class LabColor(NamedTuple):
    """CIELAB triple: l in [0, 100], a/b nominally in [-128, 127]."""

    l: float
    a: float
    b: float


class HsvColor(NamedTuple):
    """Hexcone HSV: h in degrees [0, 360), s and v in [0, 1]."""

    h: float
    s: float
    v: float


class ChannelStats(NamedTuple):
    """Per-channel CIELAB mean and population standard deviation."""

    mean: np.ndarray
    std: np.ndarray


@dataclass(frozen=True, eq=False)
class Raster:
    """A width x height grid of RGB pixels.

    Stored as a read-only (height, width, 3) float64 array with values
    in [0, 1], row-major to match image conventions.
    """

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(np.asarray(self.pixels, dtype=np.float64))
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"raster must have shape (h, w, 3), got {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("empty raster")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("raster channels must lie in [0, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def full(cls, width: int, height: int, color: RgbColor) -> "Raster":
        """Uniform raster of the given color."""
        return cls(np.full((height, width, 3), np.asarray(color, dtype=np.float64)))

    def equals(self, other: "Raster", tol: float = 0.0) -> bool:
        if self.pixels.shape != other.pixels.shape:
            return False
        if tol == 0.0:
            return bool(np.array_equal(self.pixels, other.pixels))
        return bool(np.abs(self.pixels - other.pixels).max() <= tol)


def rgb_to_hex(c: RgbColor) -> str:
    """#rrggbb with channels rounded to the nearest 8-bit level."""
    r, g, b = (int(np.rint(v * 255.0)) for v in c)
    return f"#{r:02x}{g:02x}{b:02x}"


def hex_to_rgb(s: str) -> RgbColor:
    s = s.lstrip("#")
    if len(s) != 6:
        raise ValueError(f"expected #rrggbb, got {s!r}")
    return RgbColor(*(int(s[i : i + 2], 16) / 255.0 for i in (0, 2, 4)))


# sRGB <-> XYZ (D65), the standard IEC 61966-2-1 matrices.
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ_TO_RGB = np.linalg.inv(_RGB_TO_XYZ)
# White point taken as the matrix image of RGB white so that (1,1,1) maps to
# exactly L=100, a=b=0 and round trips stay self-consistent.
_WHITE_D65 = _RGB_TO_XYZ.sum(axis=1)

# CIELAB f(t) breakpoints
_EPS = (6.0 / 29.0) ** 3
_KAPPA = (29.0 / 6.0) ** 2 / 3.0  # slope of the linear segment


def srgb_to_linear(x: np.ndarray) -> np.ndarray:
    """Undo the sRGB transfer curve (gamma decode)."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x <= 0.04045, x / 12.92, ((x + 0.055) / 1.055) ** 2.4)


def linear_to_srgb(x: np.ndarray) -> np.ndarray:
    """Apply the sRGB transfer curve (gamma encode). Input is clipped at 0."""
    x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
    return np.where(x <= 0.0031308, x * 12.92, 1.055 * x ** (1.0 / 2.4) - 0.055)


def rgb_to_lab_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized sRGB -> CIELAB over an (..., 3) array of [0, 1] values."""
    rgb = np.asarray(rgb, dtype=np.float64)
    xyz = srgb_to_linear(rgb) @ _RGB_TO_XYZ.T
    t = xyz / _WHITE_D65
    f = np.where(t > _EPS, np.cbrt(t), _KAPPA * t + 4.0 / 29.0)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    return np.stack([116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)], axis=-1)


def lab_to_rgb_array(lab: np.ndarray) -> tuple[np.ndarray, int]:
    """Vectorized CIELAB -> sRGB with per-channel clamping to [0, 1].

    Returns (rgb, n_clipped) where n_clipped counts pixels that had any
    channel outside the sRGB gamut before clamping.
    """
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    t = np.where(f > 6.0 / 29.0, f**3, (f - 4.0 / 29.0) / _KAPPA)
    rgb = linear_to_srgb(t * _WHITE_D65 @ _XYZ_TO_RGB.T)
    out_of_gamut = (rgb < -1e-9) | (rgb > 1.0 + 1e-9)
    n_clipped = int(np.count_nonzero(out_of_gamut.any(axis=-1)))
    return np.clip(rgb, 0.0, 1.0), n_clipped


def rgb_to_hsv_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized sRGB -> hexcone HSV; h in degrees, achromatic pixels get h=0."""
    rgb = np.asarray(rgb, dtype=np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    v = rgb.max(axis=-1)
    delta = v - rgb.min(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(v > 0.0, delta / v, 0.0)
        h = np.where(
            delta > 0.0,
            np.select(
                [v == r, v == g],
                [(g - b) / delta, (b - r) / delta + 2.0],
                (r - g) / delta + 4.0,
            ),
            0.0,
        )
    h = (h * 60.0) % 360.0
    return np.stack([h, s, v], axis=-1)


def rgb_to_lab(c: RgbColor) -> LabColor:
    """Convert a single sRGB color to CIELAB."""
    lab = rgb_to_lab_array(np.asarray(c, dtype=np.float64))
    return LabColor(float(lab[0]), float(lab[1]), float(lab[2]))


def lab_to_rgb(c: LabColor) -> RgbColor:
    """Convert a single CIELAB color to sRGB, clamping out-of-gamut channels."""
    rgb, _ = lab_to_rgb_array(np.asarray(c, dtype=np.float64))
    return RgbColor(float(rgb[0]), float(rgb[1]), float(rgb[2]))


def rgb_to_hsv(c: RgbColor) -> HsvColor:
    """Convert a single sRGB color to HSV (h in degrees)."""
    hsv = rgb_to_hsv_array(np.asarray(c, dtype=np.float64))
    return HsvColor(float(hsv[0]), float(hsv[1]), float(hsv[2]))


def ciede2000_array(lab1: np.ndarray, lab2: np.ndarray) -> np.ndarray:
    """Vectorized CIEDE2000 color difference between (..., 3) LAB arrays.

    Full formula with the rotation term, kL = kC = kH = 1.
    """
    lab1 = np.asarray(lab1, dtype=np.float64)
    lab2 = np.asarray(lab2, dtype=np.float64)
    l1, a1, b1 = lab1[..., 0], lab1[..., 1], lab1[..., 2]
    l2, a2, b2 = lab2[..., 0], lab2[..., 1], lab2[..., 2]

    c1 = np.hypot(a1, b1)
    c2 = np.hypot(a2, b2)
    c_bar = 0.5 * (c1 + c2)
    g = 0.5 * (1.0 - np.sqrt(c_bar**7 / (c_bar**7 + 25.0**7)))
    a1p = (1.0 + g) * a1
    a2p = (1.0 + g) * a2
    c1p = np.hypot(a1p, b1)
    c2p = np.hypot(a2p, b2)

    h1p = np.degrees(np.arctan2(b1, a1p)) % 360.0
    h2p = np.degrees(np.arctan2(b2, a2p)) % 360.0

    dl = l2 - l1
    dc = c2p - c1p

    h_diff = h2p - h1p
    dh = np.where(
        c1p * c2p == 0.0,
        0.0,
        np.where(
            np.abs(h_diff) <= 180.0,
            h_diff,
            np.where(h_diff > 180.0, h_diff - 360.0, h_diff + 360.0),
        ),
    )
    dH = 2.0 * np.sqrt(c1p * c2p) * np.sin(np.radians(dh) / 2.0)

    l_bar = 0.5 * (l1 + l2)
    cp_bar = 0.5 * (c1p + c2p)
    h_sum = h1p + h2p
    h_bar = np.where(
        c1p * c2p == 0.0,
        h_sum,
        np.where(
            np.abs(h1p - h2p) <= 180.0,
            0.5 * h_sum,
            np.where(h_sum < 360.0, 0.5 * (h_sum + 360.0), 0.5 * (h_sum - 360.0)),
        ),
    )

    t = (
        1.0
        - 0.17 * np.cos(np.radians(h_bar - 30.0))
        + 0.24 * np.cos(np.radians(2.0 * h_bar))
        + 0.32 * np.cos(np.radians(3.0 * h_bar + 6.0))
        - 0.20 * np.cos(np.radians(4.0 * h_bar - 63.0))
    )
    d_theta = 30.0 * np.exp(-(((h_bar - 275.0) / 25.0) ** 2))
    rc = 2.0 * np.sqrt(cp_bar**7 / (cp_bar**7 + 25.0**7))
    sl = 1.0 + 0.015 * (l_bar - 50.0) ** 2 / np.sqrt(20.0 + (l_bar - 50.0) ** 2)
    sc = 1.0 + 0.045 * cp_bar
    sh = 1.0 + 0.015 * cp_bar * t
    rt = -np.sin(np.radians(2.0 * d_theta)) * rc

    return np.sqrt(
        (dl / sl) ** 2
        + (dc / sc) ** 2
        + (dH / sh) ** 2
        + rt * (dc / sc) * (dH / sh)
    )


def delta_e_ciede2000(a: LabColor, b: LabColor) -> float:
    """CIEDE2000 distance between two LAB colors (symmetric, >= 0)."""
    return float(ciede2000_array(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)))


def channel_stats(img: Raster) -> ChannelStats:
    """Per-channel mean and population std of an image in CIELAB space."""
    lab = rgb_to_lab_array(img.pixels).reshape(-1, 3)
    return ChannelStats(mean=lab.mean(axis=0), std=lab.std(axis=0))


def reinhard_transfer(
    source: Raster,
    target_stats: ChannelStats,
    *,
    with_clip_count: bool = False,
) -> Raster | tuple[Raster, int]:
    """Impose target LAB channel statistics onto the source image.

    Per channel: out = (in - src_mean) * tgt_std / src_std + tgt_mean.
    A source channel with zero spread maps every pixel to the target mean.
    The result is converted back to sRGB with per-channel clamping; pass
    with_clip_count=True to also get the count of out-of-gamut pixels.
    """
    lab = rgb_to_lab_array(source.pixels)
    src = channel_stats(source)
    tgt_mean = np.asarray(target_stats.mean, dtype=np.float64)
    tgt_std = np.asarray(target_stats.std, dtype=np.float64)
    degenerate = src.std < 1e-12
    scale = np.where(degenerate, 0.0, tgt_std / np.where(degenerate, 1.0, src.std))
    out_lab = (lab - src.mean) * scale + tgt_mean
    rgb, n_clipped = lab_to_rgb_array(out_lab)
    result = Raster(rgb)
    if with_clip_count:
        return result, n_clipped
    return result
