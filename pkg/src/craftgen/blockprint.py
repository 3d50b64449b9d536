"""Rule-based Block Print design generation.

A block starts as a square, triangle or hexagon and is divided by chords
(straight or curved lines between points on distinct edges), either across
the whole block ("block divide") or by recursively bisecting each region
("recursive divide").  Blocks are tiled over a board in the shape's standard
tessellation, optionally with per-cell rotations, and rendered with hard
flat fills so no two colors ever blend.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import shapely
from scipy import ndimage
from shapely.geometry import LineString, Polygon
from shapely.ops import split as _shapely_split

from .colors import Raster, RgbColor

SQRT3 = math.sqrt(3.0)

SHAPE_KINDS = ("square", "triangle", "hexagon")

# Per-cell rotations are restricted to angles compatible with each shape's
# tiling symmetry so the board stays gap-free.
ROTATION_CHOICES = {
    "square": (0, 90, 180, 270),
    "triangle": (0, 120, 240),
    "hexagon": (0, 120, 240),
}

# Exact sines/cosines for the angles above (plus the 180-degree base turn
# of "down" triangles composed with cell rotations).
_COS = {0: 1.0, 60: 0.5, 90: 0.0, 120: -0.5, 180: -1.0, 240: -0.5, 270: 0.0, 300: 0.5}
_SIN = {0: 0.0, 60: SQRT3 / 2, 90: 1.0, 120: SQRT3 / 2, 180: 0.0, 240: -SQRT3 / 2,
        270: -1.0, 300: -SQRT3 / 2}

_CORNER_MARGIN = 0.05   # chord endpoints keep 5% of edge length away from corners
_MAX_BULGE = 0.4        # curved chords bulge at most 40% of their length
_CURVE_SAMPLES = 16     # segments per curved chord polyline
_MIN_PIECE_FRAC = 0.15  # a bisection must leave both pieces at least this share,
                        # keeping every region visible at render resolution
_SLIVER_FRAC = 1e-9     # split artifacts below this fraction are numeric noise


@dataclass(frozen=True)
class BaseShape:
    """The basic block: a unit-side square, equilateral triangle or hexagon."""

    kind: str
    side: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in SHAPE_KINDS:
            raise ValueError(f"shape kind must be one of {SHAPE_KINDS}, got {self.kind!r}")
        if self.side <= 0:
            raise ValueError("side length must be positive")

    def vertices(self) -> np.ndarray:
        if self.kind == "square":
            v = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=np.float64)
        elif self.kind == "triangle":
            v = np.array([(0, 0), (1, 0), (0.5, SQRT3 / 2)], dtype=np.float64)
        else:  # pointy-top hexagon, bbox [0, sqrt3] x [0, 2]
            center = np.array([SQRT3 / 2, 1.0])
            ang = np.radians([90, 150, 210, 270, 330, 30])
            v = np.round(center + np.stack([np.cos(ang), np.sin(ang)], axis=1), 12)
        return v * self.side

    def polygon(self) -> Polygon:
        return Polygon(self.vertices())

    def center(self) -> np.ndarray:
        """Center of rotational symmetry (equals the centroid)."""
        return self.vertices().mean(axis=0)

    def n_edges(self) -> int:
        return {"square": 4, "triangle": 3, "hexagon": 6}[self.kind]


@dataclass(frozen=True)
class Chord:
    """A dividing line between two points on distinct boundary edges.

    Edge indices refer to the boundary the chord was drawn on: the base
    shape's edges for block-divide chords, the evolving region's boundary
    for recursive-divide chords.  ``points`` is the resolved polyline (two
    points when straight, a sampled quadratic arc when curved).
    """

    edge1: int
    t1: float
    edge2: int
    t2: float
    kind: str = "straight"
    curvature: float = 0.0
    points: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))

    def __post_init__(self) -> None:
        if self.edge1 == self.edge2:
            raise ValueError("chord endpoints must lie on distinct edges")
        if self.kind not in ("straight", "curved"):
            raise ValueError(f"chord kind must be straight or curved, got {self.kind!r}")
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class BlockDesign:
    """A divided block: base shape, the chords that divide it, the regions."""

    shape: BaseShape
    style: str  # "block_divide" | "recursive_divide"
    seed: int
    chords: tuple[Chord, ...]
    regions: tuple[Polygon, ...]

    @property
    def n_regions(self) -> int:
        return len(self.regions)

    def to_json_dict(self) -> dict:
        return {
            "format": "craftgen-block/1",
            "shape": {"kind": self.shape.kind, "side": self.shape.side},
            "style": self.style,
            "seed": int(self.seed),
            "chords": [
                {
                    "edge1": c.edge1,
                    "t1": c.t1,
                    "edge2": c.edge2,
                    "t2": c.t2,
                    "kind": c.kind,
                    "curvature": c.curvature,
                    "points": c.points.tolist(),
                }
                for c in self.chords
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "BlockDesign":
        shape = BaseShape(doc["shape"]["kind"], doc["shape"]["side"])
        chords = tuple(
            Chord(
                edge1=c["edge1"],
                t1=c["t1"],
                edge2=c["edge2"],
                t2=c["t2"],
                kind=c["kind"],
                curvature=c["curvature"],
                points=np.asarray(c["points"], dtype=np.float64),
            )
            for c in doc["chords"]
        )
        regions = [shape.polygon()]
        for chord in chords:
            regions = _apply_chord(regions, chord.points)
        return cls(shape=shape, style=doc["style"], seed=int(doc["seed"]),
                   chords=chords, regions=tuple(regions))


# ---------------------------------------------------------------------------
# chord construction and region splitting

def _edge_point(ring: np.ndarray, edge: int, t: float) -> np.ndarray:
    a, b = ring[edge], ring[edge + 1]
    return a + t * (b - a)


def _chord_polyline(p1: np.ndarray, p2: np.ndarray, kind: str, curvature: float) -> np.ndarray:
    if kind == "straight":
        return np.vstack([p1, p2])
    chord_len = float(np.linalg.norm(p2 - p1))
    d = (p2 - p1) / chord_len
    normal = np.array([-d[1], d[0]])
    ctrl = 0.5 * (p1 + p2) + curvature * chord_len * normal
    t = np.linspace(0.0, 1.0, _CURVE_SAMPLES + 1)[:, None]
    return (1 - t) ** 2 * p1 + 2 * t * (1 - t) * ctrl + t**2 * p2


def _extended_line(points: np.ndarray, eps: float) -> LineString:
    """Extend both polyline ends so the cut registers through the boundary."""
    d0 = points[0] - points[1]
    d0 = d0 / np.linalg.norm(d0)
    d1 = points[-1] - points[-2]
    d1 = d1 / np.linalg.norm(d1)
    return LineString(np.vstack([points[0] + eps * d0, points, points[-1] + eps * d1]))


def _split_region(region: Polygon, chord_points: np.ndarray) -> list[Polygon] | None:
    """Split a region by a chord polyline; None when no genuine crossing."""
    line = _extended_line(chord_points, eps=1e-6 * math.sqrt(region.area + 1e-30) + 1e-9)
    try:
        collection = _shapely_split(region, line)
    except Exception:
        return None
    pieces = [g for g in collection.geoms
              if isinstance(g, Polygon) and g.area >= _SLIVER_FRAC * region.area]
    if len(pieces) < 2:
        return None
    pieces.sort(key=lambda p: (round(p.centroid.x, 9), round(p.centroid.y, 9)))
    return pieces


def _apply_chord(regions: list[Polygon], chord_points: np.ndarray) -> list[Polygon]:
    """Split every region the chord genuinely crosses, preserving order."""
    out: list[Polygon] = []
    for region in regions:
        pieces = _split_region(region, chord_points)
        if pieces is None:
            out.append(region)
        else:
            out.extend(pieces)
    return out


def _ring_arrays(poly: Polygon) -> tuple[np.ndarray, np.ndarray]:
    ring = np.asarray(poly.exterior.coords)
    lens = np.linalg.norm(ring[1:] - ring[:-1], axis=1)
    return ring, lens


def _sample_region_chord(
    rng: np.random.Generator, region: Polygon, curve_prob: float = 0.5, tries: int = 60
) -> tuple[Chord, list[Polygon]] | None:
    """Draw a chord that bisects the region into exactly two decent pieces."""
    ring, lens = _ring_arrays(region)
    usable = lens > 1e-9
    if usable.sum() < 2:
        return None
    weights = np.where(usable, lens, 0.0)
    weights = weights / weights.sum()
    scale = math.sqrt(region.area)
    for _ in range(tries):
        e1, e2 = rng.choice(len(lens), size=2, replace=False, p=weights)
        t1 = float(rng.uniform(_CORNER_MARGIN, 1 - _CORNER_MARGIN))
        t2 = float(rng.uniform(_CORNER_MARGIN, 1 - _CORNER_MARGIN))
        p1 = _edge_point(ring, int(e1), t1)
        p2 = _edge_point(ring, int(e2), t2)
        if np.linalg.norm(p2 - p1) < 0.15 * scale:
            continue
        kind = "curved" if rng.random() < curve_prob else "straight"
        curvature = float(rng.uniform(-_MAX_BULGE, _MAX_BULGE)) if kind == "curved" else 0.0
        points = _chord_polyline(p1, p2, kind, curvature)
        if not LineString(points).covered_by(region):
            continue
        pieces = _split_region(region, points)
        if pieces is None or len(pieces) != 2:
            continue
        if min(p.area for p in pieces) < _MIN_PIECE_FRAC * region.area:
            continue
        chord = Chord(int(e1), t1, int(e2), t2, kind, curvature, points)
        return chord, pieces
    return None


def _fallback_region_chord(region: Polygon) -> tuple[Chord, list[Polygon]]:
    """Deterministic bisection: the most balanced edge-midpoint connector."""
    ring, lens = _ring_arrays(region)
    best = None
    best_balance = -1.0
    for e1 in range(len(lens)):
        for e2 in range(e1 + 1, len(lens)):
            if lens[e1] < 1e-9 or lens[e2] < 1e-9:
                continue
            p1 = _edge_point(ring, e1, 0.5)
            p2 = _edge_point(ring, e2, 0.5)
            points = np.vstack([p1, p2])
            if not LineString(points).covered_by(region):
                continue
            pieces = _split_region(region, points)
            if pieces is None or len(pieces) != 2:
                continue
            balance = min(p.area for p in pieces) / region.area
            if balance > best_balance + 1e-12:
                best_balance = balance
                best = (Chord(e1, 0.5, e2, 0.5, "straight", 0.0, points), pieces)
    if best is None:
        raise RuntimeError("could not bisect region")  # pragma: no cover
    return best


def block_divide(shape: BaseShape, n_chords: int, seed: int = 0) -> BlockDesign:
    """Divide a block with chords whose endpoints lie on the outer edges.

    Each chord joins two points on distinct edges of the base shape and may
    cross previously drawn chords, so the region count depends on the
    arrangement. Deterministic for a fixed (shape, n_chords, seed).
    """
    if n_chords < 1:
        raise ValueError("n_chords must be >= 1")
    rng = np.random.default_rng([int(seed), 0x6B])
    ring = np.vstack([shape.vertices(), shape.vertices()[:1]])
    base = shape.polygon()
    regions = [base]
    chords: list[Chord] = []
    m = shape.n_edges()
    while len(chords) < n_chords:
        e1, e2 = rng.choice(m, size=2, replace=False)
        t1 = float(rng.uniform(_CORNER_MARGIN, 1 - _CORNER_MARGIN))
        t2 = float(rng.uniform(_CORNER_MARGIN, 1 - _CORNER_MARGIN))
        p1 = _edge_point(ring, int(e1), t1)
        p2 = _edge_point(ring, int(e2), t2)
        if np.linalg.norm(p2 - p1) < _CORNER_MARGIN * shape.side:
            continue
        kind = "curved" if rng.random() < 0.5 else "straight"
        curvature = float(rng.uniform(-_MAX_BULGE, _MAX_BULGE)) if kind == "curved" else 0.0
        points = _chord_polyline(p1, p2, kind, curvature)
        # the base shape is convex: a straight chord is always inside; a
        # curved one is inside iff its control triangle stays inside
        if kind == "curved" and not LineString(points).covered_by(base):
            continue
        regions = _apply_chord(regions, points)
        chords.append(Chord(int(e1), t1, int(e2), t2, kind, curvature, points))
    return BlockDesign(shape=shape, style="block_divide", seed=int(seed),
                       chords=tuple(chords), regions=tuple(regions))


def recursive_divide(shape: BaseShape, depth: int, seed: int = 0) -> BlockDesign:
    """Recursively bisect every region, yielding exactly 2**depth regions."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    rng = np.random.default_rng([int(seed), 0x52])
    regions: list[Polygon] = [shape.polygon()]
    chords: list[Chord] = []
    for _ in range(depth):
        next_regions: list[Polygon] = []
        for region in regions:
            sampled = _sample_region_chord(rng, region)
            if sampled is None:
                sampled = _fallback_region_chord(region)
            chord, pieces = sampled
            chords.append(chord)
            next_regions.extend(pieces)
        regions = next_regions
    return BlockDesign(shape=shape, style="recursive_divide", seed=int(seed),
                       chords=tuple(chords), regions=tuple(regions))


def region_adjacency(design: BlockDesign) -> list[tuple[int, int]]:
    """Index pairs of regions that share a boundary of positive length."""
    pairs = []
    regions = design.regions
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            shared = regions[i].boundary.intersection(regions[j].boundary)
            if shared.length > 1e-9:
                pairs.append((i, j))
    return pairs


def assign_region_colors(design: BlockDesign, n_colors: int, seed: int) -> np.ndarray:
    """Greedy seeded palette assignment keeping adjacent regions distinct.

    Falls back to free draws for a region whose neighbors already exhaust
    the palette.
    """
    if n_colors < 1:
        raise ValueError("palette must be non-empty")
    rng = np.random.default_rng([int(seed), 0xC0])
    neighbors: dict[int, list[int]] = {i: [] for i in range(design.n_regions)}
    for i, j in region_adjacency(design):
        neighbors[i].append(j)
        neighbors[j].append(i)
    assignment = np.full(design.n_regions, -1, dtype=np.int64)
    for i in range(design.n_regions):
        taken = {int(assignment[j]) for j in neighbors[i] if assignment[j] >= 0}
        free = [c for c in range(n_colors) if c not in taken]
        if free:
            assignment[i] = free[int(rng.integers(0, len(free)))]
        else:
            assignment[i] = int(rng.integers(0, n_colors))
    return assignment


# ---------------------------------------------------------------------------
# tiling

@dataclass(frozen=True, eq=False)
class Pattern:
    """A block repeated rows x cols over the board, with per-cell rotations."""

    block: BlockDesign
    rows: int
    cols: int
    rotation_policy: str  # "none" | "random" | "fixed"
    rotations: np.ndarray  # (rows, cols) angles in degrees
    seed: int

    def __post_init__(self) -> None:
        rot = np.ascontiguousarray(np.asarray(self.rotations, dtype=np.int64))
        if rot.shape != (self.rows, self.cols):
            raise ValueError("rotation grid must be rows x cols")
        allowed = set(ROTATION_CHOICES[self.block.shape.kind])
        if not set(np.unique(rot).tolist()) <= allowed:
            raise ValueError(f"rotations must come from {sorted(allowed)}")
        rot.setflags(write=False)
        object.__setattr__(self, "rotations", rot)

    def board_size(self) -> tuple[float, float]:
        """(width, height) of the design board in shape units."""
        s = self.block.shape.side
        if self.block.shape.kind == "square":
            return self.cols * s, self.rows * s
        if self.block.shape.kind == "triangle":
            return (self.cols + 1) * s / 2.0, self.rows * s * SQRT3 / 2.0
        return self.cols * SQRT3 * s, (1.5 * self.rows + 0.5) * s

    def to_json_dict(self) -> dict:
        return {
            "format": "craftgen-pattern/1",
            "block": self.block.to_json_dict(),
            "rows": self.rows,
            "cols": self.cols,
            "rotation_policy": self.rotation_policy,
            "rotations": self.rotations.tolist(),
            "seed": int(self.seed),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Pattern":
        return cls(
            block=BlockDesign.from_json_dict(doc["block"]),
            rows=int(doc["rows"]),
            cols=int(doc["cols"]),
            rotation_policy=doc["rotation_policy"],
            rotations=np.asarray(doc["rotations"], dtype=np.int64),
            seed=int(doc["seed"]),
        )


def tile_pattern(
    block: BlockDesign,
    rows: int,
    cols: int,
    rotation_policy: str = "none",
    seed: int = 0,
    fixed_angle: int = 0,
) -> Pattern:
    """Repeat the block rows x cols with the chosen rotation policy."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    allowed = ROTATION_CHOICES[block.shape.kind]
    if rotation_policy == "none":
        rotations = np.zeros((rows, cols), dtype=np.int64)
    elif rotation_policy == "fixed":
        if fixed_angle not in allowed:
            raise ValueError(f"fixed angle must be one of {allowed}")
        rotations = np.full((rows, cols), fixed_angle, dtype=np.int64)
    elif rotation_policy == "random":
        rng = np.random.default_rng([int(seed), 0x07])
        rotations = np.asarray(allowed, dtype=np.int64)[
            rng.integers(0, len(allowed), size=(rows, cols))
        ]
    else:
        raise ValueError("rotation_policy must be none, random or fixed")
    return Pattern(block=block, rows=rows, cols=cols, rotation_policy=rotation_policy,
                   rotations=rotations, seed=int(seed))


# ---------------------------------------------------------------------------
# rendering

def _rotation_matrix(deg: int) -> np.ndarray:
    deg = int(deg) % 360
    c, s = _COS[deg], _SIN[deg]
    return np.array([[c, -s], [s, c]])


def _map_square(x: np.ndarray, y: np.ndarray, s: float):
    j = np.floor(x / s).astype(np.int64)
    i = np.floor(y / s).astype(np.int64)
    cx = (j + 0.5) * s
    cy = (i + 0.5) * s
    return i, j, cx, cy, np.zeros(x.shape, dtype=np.int64)


def _map_triangle(x: np.ndarray, y: np.ndarray, s: float):
    h = s * SQRT3 / 2.0
    r = np.floor(y / h).astype(np.int64)
    xs = x - r * (s / 2.0)  # row r is offset by half a side
    k = np.floor(xs / s).astype(np.int64)
    fx = xs / s - k
    fy = y / h - r
    up = fy <= np.minimum(2.0 * fx, 2.0 * (1.0 - fx))
    d = np.where(fx > 0.5, k, k - 1)
    cx = np.where(up, (k + 0.5) * s, (d + 1.0) * s) + r * (s / 2.0)
    cy = (r + np.where(up, 1.0 / 3.0, 2.0 / 3.0)) * h
    col = np.where(up, 2 * k, 2 * d + 1)
    theta = np.where(up, 0, 180).astype(np.int64)
    return r, col, cx, cy, theta


def _map_hexagon(x: np.ndarray, y: np.ndarray, s: float):
    # pointy-top axial coordinates with odd rows offset right by half a hex
    x0, y0 = SQRT3 / 2.0 * s, s
    px = x - x0
    py = y - y0
    qf = (SQRT3 / 3.0 * px - py / 3.0) / s
    rf = (2.0 / 3.0 * py) / s
    xf, zf = qf, rf
    yf = -xf - zf
    rx, rz, ry = np.round(xf), np.round(zf), np.round(yf)
    dx, dz, dy = np.abs(rx - xf), np.abs(rz - zf), np.abs(ry - yf)
    fix_x = (dx > dz) & (dx > dy)
    fix_z = ~fix_x & (dz > dy)
    rx = np.where(fix_x, -ry - rz, rx)
    rz = np.where(fix_z, -rx - ry, rz)
    q = rx.astype(np.int64)
    r = rz.astype(np.int64)
    cx = x0 + SQRT3 * s * (q + r / 2.0)
    cy = y0 + 1.5 * s * r
    col = q + (r - (r % 2)) // 2
    return r, col, cx, cy, np.zeros(x.shape, dtype=np.int64)


_TILE_MAPPERS = {"square": _map_square, "triangle": _map_triangle, "hexagon": _map_hexagon}

# Label-map resolution (width in cells); odd and prime-ish so label cells do
# not systematically align with output pixel centers.
_LABEL_RESOLUTION = 331


def block_label_map(design: BlockDesign, resolution: int = _LABEL_RESOLUTION) -> tuple[np.ndarray, np.ndarray, float]:
    """Rasterize the block's regions to a per-cell region index map.

    Returns (labels, bbox_min, cell_size) with labels shaped (rows, cols).
    """
    minx, miny, maxx, maxy = design.shape.polygon().bounds
    cell = (maxx - minx) / resolution
    n_cols = resolution
    n_rows = max(1, math.ceil((maxy - miny) / cell - 1e-9))
    xs = minx + (np.arange(n_cols) + 0.5) * cell
    ys = miny + (np.arange(n_rows) + 0.5) * cell
    gx, gy = np.meshgrid(xs, ys)
    labels = np.full(gx.shape, -1, dtype=np.int32)
    for idx, region in enumerate(design.regions):
        free = labels < 0
        if not free.any():
            break
        hit = shapely.contains_xy(region, gx[free], gy[free])
        sel = np.zeros(gx.shape, dtype=bool)
        sel[free] = hit
        labels[sel] = idx
    # cells on region boundaries: take the first region whose closure touches
    for idx, region in enumerate(design.regions):
        free = labels < 0
        if not free.any():
            break
        hit = shapely.intersects_xy(region, gx[free], gy[free])
        sel = np.zeros(gx.shape, dtype=bool)
        sel[free] = hit
        labels[sel] = idx
    # cells outside the shape (bbox corners): copy the nearest labeled cell
    if (labels < 0).any():
        _, (ii, jj) = ndimage.distance_transform_edt(labels < 0, return_indices=True)
        labels = labels[ii, jj]
    return labels, np.array([minx, miny]), cell


def render_pattern(
    pattern: Pattern,
    palette: Sequence[RgbColor],
    px: int = 512,
    *,
    with_labels: bool = False,
) -> Raster | tuple[Raster, np.ndarray]:
    """Rasterize a tiled pattern with hard flat fills.

    Every output pixel is exactly one palette color (no anti-aliasing);
    adjacent regions get distinct colors greedily when the palette allows.
    ``px`` is the output width; height follows the board aspect ratio.
    With ``with_labels=True`` also returns the per-pixel region index map.
    """
    colors = np.asarray(getattr(palette, "colors", palette), dtype=np.float64)
    if colors.ndim != 2 or colors.shape[0] < 1:
        raise ValueError("palette must be non-empty")
    if px < 64:
        raise ValueError("px must be >= 64")

    design = pattern.block
    shape = design.shape
    board_w, board_h = pattern.board_size()
    delta = board_w / px
    width_px = px
    height_px = max(1, round(board_h / delta))

    xs = (np.arange(width_px) + 0.5) * delta
    ys = (np.arange(height_px) + 0.5) * delta
    gx, gy = np.meshgrid(xs, ys)

    i_cell, j_cell, cx, cy, theta_base = _TILE_MAPPERS[shape.kind](gx, gy, shape.side)
    cell_rot = pattern.rotations[i_cell % pattern.rows, j_cell % pattern.cols]
    theta = (theta_base + cell_rot) % 360

    labels_map, bbox_min, cell = block_label_map(design)
    center = shape.center()

    pixel_labels = np.zeros(gx.shape, dtype=np.int32)
    for deg in np.unique(theta):
        mask = theta == deg
        rot = _rotation_matrix(-int(deg))
        dxp = gx[mask] - cx[mask]
        dyp = gy[mask] - cy[mask]
        lx = rot[0, 0] * dxp + rot[0, 1] * dyp + center[0]
        ly = rot[1, 0] * dxp + rot[1, 1] * dyp + center[1]
        u = np.clip(((lx - bbox_min[0]) / cell).astype(np.int64), 0, labels_map.shape[1] - 1)
        v = np.clip(((ly - bbox_min[1]) / cell).astype(np.int64), 0, labels_map.shape[0] - 1)
        pixel_labels[mask] = labels_map[v, u]

    assignment = assign_region_colors(design, len(colors), pattern.seed)
    raster = Raster(colors[assignment[pixel_labels]])
    if with_labels:
        return raster, pixel_labels
    return raster
