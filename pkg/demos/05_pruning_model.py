"""
Training a boosted-tree model to prune weak designs
===================================================

Rendered designs reduce to 20 numbers: the ten largest color area
fractions, darkness flags for the two dominant colors, a dullness score,
a one-hot color-harmony class and a global lightness contrast. A small
gradient-boosted tree ensemble learns judge preferences over those
features, and pruning keeps only designs whose predicted liking
probability clears a threshold.
"""

import numpy as np

from craftgen import (
    BaseShape,
    GbmHyperparams,
    LabeledDesign,
    RgbColor,
    extract_features,
    predict,
    prune,
    recursive_divide,
    render_pattern,
    tile_pattern,
    train_gbm,
)
from craftgen.pruning import HARMONY_CATEGORIES, FeatureVector

# Synthetic training data: judges dislike dull, low-contrast designs.
rng = np.random.default_rng(15)
training = []
for _ in range(400):
    fractions = rng.dirichlet(np.ones(12))[:10]
    fv = FeatureVector(
        area_fractions=tuple(float(f) for f in fractions),
        dark_flags=(bool(rng.integers(2)), bool(rng.integers(2))),
        dullness=float(rng.random()),
        harmony=HARMONY_CATEGORIES[rng.integers(len(HARMONY_CATEGORIES))],
        global_contrast=float(rng.random() * 100.0),
    )
    liked = fv.dullness + (100.0 - fv.global_contrast) / 100.0 < 1.0
    training.append(LabeledDesign(fv, (liked, liked, bool(rng.integers(2)))))

model = train_gbm(training, GbmHyperparams(max_leaves=16, min_samples_leaf=20,
                                           n_trees=30))
losses = model.train_losses
print(f"trained {len(model.trees)} trees; "
      f"log-loss {losses[0]:.3f} -> {losses[-1]:.3f}")

# Score actual renders: vivid versus washed-out palettes.
vivid = [RgbColor(0.9, 0.15, 0.1), RgbColor(0.1, 0.2, 0.7), RgbColor(0.95, 0.8, 0.1)]
washed = [RgbColor(0.62, 0.60, 0.58), RgbColor(0.68, 0.66, 0.62), RgbColor(0.58, 0.57, 0.56)]
candidates = []
for name, palette in (("vivid", vivid), ("washed", washed)):
    for seed in range(3):
        block = recursive_divide(BaseShape("square"), depth=2, seed=seed)
        pattern = tile_pattern(block, 2, 2, "random", seed)
        img = render_pattern(pattern, palette, px=128)
        candidates.append((f"{name}-{seed}", extract_features(img)))

for name, fv in candidates:
    print(f"  {name}: predicted liking {predict(model, fv):.2f}")
kept = prune(candidates, model, threshold=0.5)
print(f"pruning at 0.5 keeps {len(kept)} of {len(candidates)}: "
      f"{[name for name, _ in kept]}")
