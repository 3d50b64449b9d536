"""Aesthetic pruning of rendered designs.

Five feature families are computed on flat-fill renders: per-color area
fractions, darkness of the two dominant colors, a dullness score, the color
harmony category, and global lightness contrast between adjacent colors.
A small gradient-boosted-trees classifier trained on judge votes scores
designs so low-scoring ones can be discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .colors import Raster, RgbColor, rgb_to_hsv, rgb_to_lab_array

HARMONY_CATEGORIES = (
    "monochromatic",
    "analogous",
    "complementary",
    "triadic",
    "tetradic",
    "none",
)

MAX_FLAT_FILL_COLORS = 32
_ACHROMATIC_SATURATION = 0.15   # below this HSV saturation a color has no usable hue
_MONO_SPAN_DEG = 15.0
_ANALOGOUS_SPAN_DEG = 40.0
_CLUSTER_TOLERANCE_DEG = 20.0   # slack on the ideal 180/120/90 cluster spacing
_DARK_LIGHTNESS = 0.35          # HSL lightness threshold for "dark"
_DARK_LIGHTNESS_BLUE = 0.45     # relaxed threshold: blues read darker
_BLUE_HUE_RANGE = (200.0, 280.0)

FEATURE_DIM = 10 + 2 + 1 + len(HARMONY_CATEGORIES) + 1


def feature_names() -> list[str]:
    names = [f"area_fraction_{i + 1}" for i in range(10)]
    names += ["dark_1", "dark_2", "dullness"]
    names += [f"harmony_{h}" for h in HARMONY_CATEGORIES]
    names += ["global_contrast"]
    return names


@dataclass(frozen=True)
class FeatureVector:
    """The five feature families of a rendered design, 20 numbers total."""

    area_fractions: tuple[float, ...]  # top-10 color fractions, zero-padded
    dark_flags: tuple[bool, bool]      # the two largest-area colors
    dullness: float
    harmony: str
    global_contrast: float

    def __post_init__(self) -> None:
        if len(self.area_fractions) != 10:
            raise ValueError("area_fractions must hold exactly 10 entries")
        if sum(self.area_fractions) > 1.0 + 1e-9:
            raise ValueError("area fractions must sum to at most 1")
        if not all(0.0 <= f <= 1.0 for f in self.area_fractions):
            raise ValueError("each area fraction must lie in [0, 1]")
        if not 0.0 <= self.dullness <= 1.0:
            raise ValueError("dullness must lie in [0, 1]")
        if self.harmony not in HARMONY_CATEGORIES:
            raise ValueError(f"harmony must be one of {HARMONY_CATEGORIES}")
        if not 0.0 <= self.global_contrast <= 100.0 + 1e-9:
            raise ValueError("global contrast must lie in [0, 100]")

    def to_array(self) -> np.ndarray:
        onehot = [1.0 if self.harmony == h else 0.0 for h in HARMONY_CATEGORIES]
        return np.array(
            [*self.area_fractions,
             float(self.dark_flags[0]), float(self.dark_flags[1]),
             self.dullness, *onehot, self.global_contrast],
            dtype=np.float64,
        )


# ---------------------------------------------------------------------------
# feature families

def _distinct_colors(img: Raster) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(colors, counts, index_image); error when not a flat-fill render."""
    flat = img.pixels.reshape(-1, 3)
    colors, inverse = np.unique(flat, axis=0, return_inverse=True)
    if colors.shape[0] > MAX_FLAT_FILL_COLORS:
        raise ValueError("not a flat-fill design")
    counts = np.bincount(inverse, minlength=colors.shape[0])
    return colors, counts, inverse.reshape(img.pixels.shape[:2])


def area_fractions(img: Raster) -> list[tuple[RgbColor, float]]:
    """Exact per-color pixel fractions, descending (ties by RGB order)."""
    colors, counts, _ = _distinct_colors(img)
    order = np.argsort(-counts, kind="stable")  # unique() is RGB-ordered
    total = counts.sum()
    return [
        (RgbColor(*(float(v) for v in colors[k])), counts[k] / total) for k in order
    ]


def darkness_class(c: RgbColor) -> bool:
    """Dark iff HSL lightness < 0.35; < 0.45 for hues in the blue range."""
    h, _, _ = rgb_to_hsv(c)
    lightness = (max(c) + min(c)) / 2.0
    lo, hi = _BLUE_HUE_RANGE
    threshold = _DARK_LIGHTNESS_BLUE if lo <= h <= hi else _DARK_LIGHTNESS
    return lightness < threshold


def dullness_score(colors: list[tuple[RgbColor, float]]) -> float:
    """Area-weighted mean of per-color dullness 1 - s*v (HSV)."""
    if not colors:
        raise ValueError("color list must be non-empty")
    total = 0.0
    weight = 0.0
    for color, fraction in colors:
        _, s, v = rgb_to_hsv(color)
        total += (1.0 - s * v) * fraction
        weight += fraction
    if weight == 0.0:
        return 0.0
    return total / weight


def _circular_clusters(hues: np.ndarray, k: int) -> list[np.ndarray] | None:
    """Split sorted hues at the k largest circular gaps; None if too few."""
    if hues.size < k:
        return None
    gaps = np.diff(np.append(hues, hues[0] + 360.0))
    cut_after = np.sort(np.argsort(-gaps, kind="stable")[:k])
    clusters = []
    start = (cut_after[-1] + 1) % hues.size
    for cut in cut_after:
        if start <= cut:
            members = hues[start : cut + 1]
        else:  # cluster wraps past 360
            members = np.concatenate([hues[start:], hues[: cut + 1] + 360.0])
        clusters.append(members)
        start = (cut + 1) % hues.size
    return clusters


def harmony_type(colors: list[tuple[RgbColor, float]]) -> str:
    """Classify the hue layout of the chromatic colors.

    Achromatic colors (HSV saturation < 0.15) carry no hue and are ignored;
    an all-achromatic set counts as monochromatic. Hues within a 15 degree
    arc are monochromatic, within 40 degrees analogous; otherwise gap-based
    clustering looks for 2/3/4 groups spaced 180/120/90 degrees apart
    (20 degrees of slack) for complementary/triadic/tetradic.
    """
    if not colors:
        raise ValueError("color list must be non-empty")
    hues = []
    for color, _ in colors:
        h, s, _ = rgb_to_hsv(color)
        if s >= _ACHROMATIC_SATURATION:
            hues.append(h)
    if not hues:
        return "monochromatic"
    hues = np.sort(np.asarray(hues, dtype=np.float64))
    gaps = np.diff(np.append(hues, hues[0] + 360.0))
    span = 360.0 - gaps.max()
    if span <= _MONO_SPAN_DEG:
        return "monochromatic"
    if span <= _ANALOGOUS_SPAN_DEG:
        return "analogous"
    for k, name in ((2, "complementary"), (3, "triadic"), (4, "tetradic")):
        clusters = _circular_clusters(hues, k)
        if clusters is None:
            continue
        if any(c.max() - c.min() > _ANALOGOUS_SPAN_DEG for c in clusters):
            continue
        centers = np.sort(np.asarray([c.mean() % 360.0 for c in clusters]))
        arcs = np.diff(np.append(centers, centers[0] + 360.0))
        ideal = 360.0 / k
        if np.all(np.abs(arcs - ideal) <= _CLUSTER_TOLERANCE_DEG):
            return name
    return "none"


def global_contrast(img: Raster) -> float:
    """Mean |delta L*| over color pairs that touch in the image.

    Scans all 4-adjacent pixel pairs with differing colors, collects the
    distinct unordered color pairs, and averages their CIELAB lightness
    differences. A single-color image has contrast 0 by convention.
    """
    colors, _, idx = _distinct_colors(img)
    k = colors.shape[0]
    if k == 1:
        return 0.0
    codes = set()
    for a, b in ((idx[:, :-1], idx[:, 1:]), (idx[:-1, :], idx[1:, :])):
        differ = a != b
        lo = np.minimum(a[differ], b[differ])
        hi = np.maximum(a[differ], b[differ])
        codes.update(np.unique(lo.astype(np.int64) * k + hi).tolist())
    if not codes:
        return 0.0
    lightness = rgb_to_lab_array(colors[None, :, :])[0][:, 0]
    pairs = np.asarray(sorted(codes), dtype=np.int64)
    return float(np.abs(lightness[pairs // k] - lightness[pairs % k]).mean())


def extract_features(img: Raster) -> FeatureVector:
    """Assemble all five feature families for a flat-fill render."""
    pairs = area_fractions(img)
    top = [fraction for _, fraction in pairs[:10]]
    top += [0.0] * (10 - len(top))
    dark1 = darkness_class(pairs[0][0])
    dark2 = darkness_class(pairs[1][0]) if len(pairs) > 1 else False
    return FeatureVector(
        area_fractions=tuple(top),
        dark_flags=(dark1, dark2),
        dullness=dullness_score(pairs),
        harmony=harmony_type(pairs),
        global_contrast=global_contrast(img),
    )


# ---------------------------------------------------------------------------
# gradient boosted trees (binary log-loss)

@dataclass(frozen=True)
class GbmHyperparams:
    learning_rate: float = 0.3
    max_leaves: int = 85
    min_samples_leaf: int = 50
    n_trees: int = 100

    def __post_init__(self) -> None:
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must lie in (0, 1]")
        if self.max_leaves < 2:
            raise ValueError("max_leaves must be >= 2")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")


@dataclass(frozen=True)
class LabeledDesign:
    """A design's features plus three judge votes; label = majority vote."""

    features: FeatureVector
    judge_votes: tuple[bool, bool, bool]

    def __post_init__(self) -> None:
        if len(self.judge_votes) != 3:
            raise ValueError("exactly three judge votes are required")

    @property
    def label(self) -> bool:
        return sum(bool(v) for v in self.judge_votes) >= 2


@dataclass(frozen=True)
class GbmModel:
    """Boosted regression trees plus the base log-odds score."""

    trees: tuple[dict, ...]
    base_score: float
    hyperparams: GbmHyperparams
    n_features: int
    train_losses: tuple[float, ...] = field(default=())
    seed: int = 0

    def to_json_dict(self) -> dict:
        return {
            "format": "craftgen-gbm/1",
            "hyperparams": {
                "learning_rate": self.hyperparams.learning_rate,
                "max_leaves": self.hyperparams.max_leaves,
                "min_samples_leaf": self.hyperparams.min_samples_leaf,
                "n_trees": self.hyperparams.n_trees,
            },
            "base_score": self.base_score,
            "n_features": self.n_features,
            "seed": self.seed,
            "train_losses": list(self.train_losses),
            "trees": list(self.trees),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GbmModel":
        hp = GbmHyperparams(**doc["hyperparams"])
        return cls(
            trees=tuple(doc["trees"]),
            base_score=float(doc["base_score"]),
            hyperparams=hp,
            n_features=int(doc["n_features"]),
            train_losses=tuple(float(v) for v in doc.get("train_losses", [])),
            seed=int(doc.get("seed", 0)),
        )


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-z))


def log_loss(y: np.ndarray, p: np.ndarray) -> float:
    p = np.clip(p, 1e-12, 1.0 - 1e-12)
    return float(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)).mean())


def _best_split(X: np.ndarray, r: np.ndarray, idx: np.ndarray, min_leaf: int):
    """Best variance-gain split of the samples in idx; None if unsplittable.

    Ties go to the lowest feature index, then the lowest threshold, so
    training is deterministic without any random state.
    """
    n = idx.size
    if n < 2 * min_leaf:
        return None
    r_sub = r[idx]
    total = r_sub.sum()
    base = total * total / n
    best_gain = 1e-12
    best = None
    ks = np.arange(min_leaf, n - min_leaf + 1)
    for f in range(X.shape[1]):
        vals = X[idx, f]
        order = np.argsort(vals, kind="stable")
        v_sorted = vals[order]
        valid = v_sorted[ks - 1] < v_sorted[ks]
        if not valid.any():
            continue
        kv = ks[valid]
        left = np.cumsum(r_sub[order])[kv - 1]
        gain = left * left / kv + (total - left) ** 2 / (n - kv) - base
        b = int(np.argmax(gain))
        if gain[b] > best_gain:
            best_gain = float(gain[b])
            threshold = float((v_sorted[kv[b] - 1] + v_sorted[kv[b]]) / 2.0)
            mask = X[idx, f] <= threshold
            best = (f, threshold, idx[mask], idx[~mask])
    if best is None:
        return None
    return best_gain, best


def _leaf_value(r: np.ndarray, h: np.ndarray, idx: np.ndarray) -> float:
    """Newton step on log-loss: sum(residual) / sum(hessian), clipped."""
    denom = h[idx].sum()
    if denom < 1e-12:
        return 0.0
    return float(np.clip(r[idx].sum() / denom, -4.0, 4.0))


def _fit_tree(X: np.ndarray, r: np.ndarray, h: np.ndarray, hp: GbmHyperparams) -> dict:
    """Grow one regression tree leaf-wise, best split first."""
    root: dict = {"n": int(X.shape[0])}
    all_idx = np.arange(X.shape[0])
    candidates = []  # (gain, insertion order, node, split) - max gain first
    first = _best_split(X, r, all_idx, hp.min_samples_leaf)
    counter = 0
    leaf_samples = {id(root): all_idx}
    if first is not None:
        candidates.append((first[0], counter, root, first[1]))
    n_leaves = 1
    while candidates and n_leaves < hp.max_leaves:
        candidates.sort(key=lambda c: (-c[0], c[1]))
        _, _, node, (f, thr, left_idx, right_idx) = candidates.pop(0)
        del leaf_samples[id(node)]
        left: dict = {"n": int(left_idx.size)}
        right: dict = {"n": int(right_idx.size)}
        node["feature"] = int(f)
        node["threshold"] = float(thr)
        node["left"] = left
        node["right"] = right
        leaf_samples[id(left)] = left_idx
        leaf_samples[id(right)] = right_idx
        n_leaves += 1
        for child, child_idx in ((left, left_idx), (right, right_idx)):
            split = _best_split(X, r, child_idx, hp.min_samples_leaf)
            if split is not None:
                counter += 1
                candidates.append((split[0], counter, child, split[1]))

    def finalize(node: dict) -> None:
        if "feature" in node:
            finalize(node["left"])
            finalize(node["right"])
        else:
            node["value"] = _leaf_value(r, h, leaf_samples[id(node)])

    finalize(root)
    return root


def _tree_predict(node: dict, X: np.ndarray) -> np.ndarray:
    out = np.empty(X.shape[0])

    def walk(nd: dict, idx: np.ndarray) -> None:
        if "feature" not in nd:
            out[idx] = nd["value"]
            return
        mask = X[idx, nd["feature"]] <= nd["threshold"]
        walk(nd["left"], idx[mask])
        walk(nd["right"], idx[~mask])

    walk(node, np.arange(X.shape[0]))
    return out


def tree_leaves(node: dict) -> list[dict]:
    if "feature" not in node:
        return [node]
    return tree_leaves(node["left"]) + tree_leaves(node["right"])


def train_gbm(
    data: list[LabeledDesign], hp: GbmHyperparams = GbmHyperparams(), seed: int = 0
) -> GbmModel:
    """Stagewise boosting of regression trees on the log-loss gradient.

    Each tree fits the residuals y - p with greedy variance-gain splits
    under the max_leaves / min_samples_leaf constraints; leaf values are
    Newton steps. Split selection is fully deterministic, so the seed only
    records provenance. Training log-loss is non-increasing per stage.
    """
    if len(data) < 2 * hp.min_samples_leaf:
        raise ValueError(
            f"need at least {2 * hp.min_samples_leaf} samples, got {len(data)}"
        )
    X = np.stack([d.features.to_array() for d in data])
    y = np.array([float(d.label) for d in data])
    if y.min() == y.max():
        raise ValueError("degenerate labels")

    p_mean = y.mean()
    base = math.log(p_mean / (1.0 - p_mean))
    score = np.full(y.shape, base)
    trees: list[dict] = []
    losses = [log_loss(y, _sigmoid(score))]
    for _ in range(hp.n_trees):
        p = _sigmoid(score)
        residual = y - p
        hessian = p * (1.0 - p)
        tree = _fit_tree(X, residual, hessian, hp)
        trees.append(tree)
        score = score + hp.learning_rate * _tree_predict(tree, X)
        losses.append(log_loss(y, _sigmoid(score)))
    return GbmModel(
        trees=tuple(trees),
        base_score=base,
        hyperparams=hp,
        n_features=X.shape[1],
        train_losses=tuple(losses),
        seed=int(seed),
    )


def predict_arrays(model: GbmModel, X: np.ndarray) -> np.ndarray:
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ValueError(
            f"feature dimension mismatch: expected {model.n_features}, "
            f"got {X.shape[1] if X.ndim == 2 else X.shape}"
        )
    score = np.full(X.shape[0], model.base_score)
    for tree in model.trees:
        score += model.hyperparams.learning_rate * _tree_predict(tree, X)
    return _sigmoid(score)


def predict(model: GbmModel, f: FeatureVector) -> float:
    """Liking probability sigmoid(base + sum(lr * tree(f))), in (0, 1)."""
    return float(predict_arrays(model, f.to_array()[None, :])[0])


def prune(
    designs: list[tuple[object, FeatureVector]],
    model: GbmModel,
    threshold: float = 0.5,
) -> list[tuple[object, FeatureVector]]:
    """Keep designs whose predicted liking probability clears the threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    return [(d, f) for d, f in designs if predict(model, f) >= threshold]


# ---------------------------------------------------------------------------
# dataset CSV (one row per design: JSON path, three votes, split)

DATASET_HEADER = ("design", "vote1", "vote2", "vote3", "split")


@dataclass(frozen=True)
class DatasetRow:
    design_path: str
    votes: tuple[bool, bool, bool]
    split: str  # "train" | "test"

    def __post_init__(self) -> None:
        if self.split not in ("train", "test"):
            raise ValueError(f"split must be train or test, got {self.split!r}")


def dataset_rows_from_csv(text: str) -> list[DatasetRow]:
    import csv
    import io

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != DATASET_HEADER:
        raise ValueError(f"dataset CSV header must be {','.join(DATASET_HEADER)}")
    rows = []
    for line in reader:
        if not line:
            continue
        path, v1, v2, v3, split = (cell.strip() for cell in line)
        rows.append(
            DatasetRow(path, tuple(bool(int(v)) for v in (v1, v2, v3)), split)
        )
    return rows


def dataset_rows_to_csv(rows: list[DatasetRow]) -> str:
    lines = [",".join(DATASET_HEADER)]
    for row in rows:
        votes = ",".join(str(int(v)) for v in row.votes)
        lines.append(f"{row.design_path},{votes},{row.split}")
    return "\n".join(lines) + "\n"
