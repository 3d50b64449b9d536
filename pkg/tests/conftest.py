"""Shared test fixtures and independent oracle helpers.

The oracles here deliberately avoid the code paths they check: region
counting rasterizes chords as walls and flood-fills, connected components
come from a hand-written BFS, and color statistics are recomputed with
plain loops.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np
import pytest
from scipy import ndimage

SQRT3 = math.sqrt(3.0)
_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def flood_fill_label(mask: np.ndarray) -> tuple[np.ndarray, int]:
    """4-connected component labeling by explicit BFS.

    Independent of every labeling routine in the package and in scipy;
    intended for small rasters.
    """
    h, w = mask.shape
    labels = np.full((h, w), -1, dtype=np.int32)
    n = 0
    for si in range(h):
        for sj in range(w):
            if not mask[si, sj] or labels[si, sj] >= 0:
                continue
            queue = deque([(si, sj)])
            labels[si, sj] = n
            while queue:
                i, j = queue.popleft()
                for a, b in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                    if 0 <= a < h and 0 <= b < w and mask[a, b] and labels[a, b] < 0:
                        labels[a, b] = n
                        queue.append((a, b))
            n += 1
    return labels, n


def _inside_shape(kind: str, s: float, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Analytic point-in-shape tests, independent of any geometry library."""
    if kind == "square":
        return (gx >= 0) & (gx <= s) & (gy >= 0) & (gy <= s)
    if kind == "triangle":
        return (gy >= 0) & (gy <= SQRT3 * gx) & (gy <= SQRT3 * (s - gx))
    dx = np.abs(gx - SQRT3 / 2.0 * s)
    dy = np.abs(gy - s)
    return (dx <= SQRT3 / 2.0 * s) & (dy <= s - dx / SQRT3)


def region_count_oracle(design, res: int = 600) -> int:
    """Count a block's regions by rasterized flood fill.

    Chord polylines and the shape boundary become 8-connected wall cells;
    4-connected components of the remaining interior cells are the
    regions. Components below the sliver threshold are rasterization
    noise; a sanity assert guards the gap between noise and real regions.
    """
    kind = design.shape.kind
    s = design.shape.side
    if kind == "square":
        maxx, maxy = s, s
    elif kind == "triangle":
        maxx, maxy = s, SQRT3 / 2.0 * s
    else:
        maxx, maxy = SQRT3 * s, 2.0 * s
    cell = maxx / res
    nx = res
    ny = int(np.ceil(maxy / cell))
    wall = np.zeros((ny, nx), dtype=bool)

    def mark(points: np.ndarray) -> None:
        pts = np.asarray(points, dtype=np.float64)
        for k in range(len(pts) - 1):
            p, q = pts[k], pts[k + 1]
            dist = float(np.hypot(q[0] - p[0], q[1] - p[1]))
            steps = max(2, int(np.ceil(dist / (0.4 * cell))) + 1)
            ts = np.linspace(0.0, 1.0, steps)
            ix = np.clip(((p[0] + ts * (q[0] - p[0])) / cell).astype(int), 0, nx - 1)
            iy = np.clip(((p[1] + ts * (q[1] - p[1])) / cell).astype(int), 0, ny - 1)
            wall[iy, ix] = True

    verts = design.shape.vertices()
    mark(np.vstack([verts, verts[:1]]))
    for chord in design.chords:
        mark(chord.points)

    xs = (np.arange(nx) + 0.5) * cell
    ys = (np.arange(ny) + 0.5) * cell
    gx, gy = np.meshgrid(xs, ys)
    free = _inside_shape(kind, s, gx, gy) & ~wall
    labels, n = ndimage.label(free, structure=_CROSS)
    sizes = np.bincount(labels.ravel())[1:] if n else np.array([], dtype=int)
    ambiguous = (sizes >= 12) & (sizes < 25)
    assert not ambiguous.any(), f"oracle resolution too low, sizes {sorted(sizes)}"
    return int((sizes >= 25).sum())


def gradient_image(width: int, height: int, phase: float = 0.0) -> np.ndarray:
    """Smooth synthetic inspiration image with varied hue content."""
    y, x = np.mgrid[0:height, 0:width]
    return np.clip(
        np.stack(
            [
                0.5 + 0.45 * np.sin(x / 9.0 + phase),
                0.5 + 0.45 * np.cos(y / 7.0 + 2.0 * phase),
                0.5 + 0.45 * np.sin((x + y) / 11.0 + 3.0 * phase),
            ],
            axis=-1,
        ),
        0.0,
        1.0,
    )


def grid_motif(size: int = 96, step: int = 12) -> np.ndarray:
    """Grayscale RGB motif: dark grid lines on a light background."""
    gray = np.full((size, size), 0.95)
    gray[::step, :] = 0.1
    gray[:, ::step] = 0.1
    return np.repeat(gray[:, :, None], 3, axis=2)


@pytest.fixture()
def inspiration_array() -> np.ndarray:
    return gradient_image(64, 48)


@pytest.fixture()
def motif_array() -> np.ndarray:
    return grid_motif()
