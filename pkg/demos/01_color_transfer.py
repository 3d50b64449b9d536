"""
Statistical color transfer between images
=========================================

Builds a cool-toned source image and a warm-toned target, then imposes
the target's CIELAB channel statistics onto the source. The transferred
image keeps the source's structure but adopts the target's mood.
"""

from pathlib import Path

import numpy as np

from craftgen import Raster, channel_stats, reinhard_transfer
from craftgen.fileio import save_png

out_dir = Path(__file__).parent / "demo-out"

# A bluish gradient as the source and a warm noise field as the target.
rng = np.random.default_rng(0)
yy, xx = np.mgrid[0:96, 0:128] / 96.0
source = Raster(np.stack([0.2 + 0.1 * xx, 0.3 + 0.2 * yy, 0.5 + 0.3 * xx], axis=-1))
target = Raster(np.stack([
    rng.uniform(0.55, 0.85, (96, 128)),
    rng.uniform(0.35, 0.55, (96, 128)),
    rng.uniform(0.15, 0.30, (96, 128)),
], axis=-1))

# The transfer matches per-channel LAB mean and spread.
stats = channel_stats(target)
result, clipped = reinhard_transfer(source, stats, with_clip_count=True)

for name, img in (("source", source), ("target", target), ("result", result)):
    s = channel_stats(img)
    print(f"{name:>7}: L*a*b* mean = {np.round(s.mean, 2)}  std = {np.round(s.std, 2)}")
print(f"out-of-gamut pixels clamped: {clipped}")

save_png(source, out_dir / "transfer_source.png")
save_png(target, out_dir / "transfer_target.png")
save_png(result, out_dir / "transfer_result.png")
print(f"wrote 3 images to {out_dir}")
