"""
Dominant color palettes from an image
=====================================

Quantizes an image into coarse RGB bins, drops the least prominent
quarter, then merges perceptually close colors until every surviving
pair is a clear CIEDE2000 step apart. The result is at most ten colors
ordered around the hue wheel.
"""

from pathlib import Path

import numpy as np

from craftgen import Raster, extract_palette, min_pairwise_delta_e
from craftgen.colors import rgb_to_hex
from craftgen.fileio import save_png

out_dir = Path(__file__).parent / "demo-out"

# A busy synthetic inspiration: bands of related hues plus noise.
rng = np.random.default_rng(4)
px = np.zeros((90, 120, 3))
bands = [(0.82, 0.25, 0.20), (0.90, 0.55, 0.20), (0.25, 0.45, 0.65),
         (0.20, 0.55, 0.40), (0.92, 0.88, 0.80), (0.30, 0.20, 0.40)]
for i, base in enumerate(bands):
    px[i * 15 : (i + 1) * 15] = base
px += rng.normal(0.0, 0.04, px.shape)
image = Raster(np.clip(px, 0.0, 1.0))

palette = extract_palette(image, max_colors=8)
print(f"extracted {len(palette)} colors "
      f"(merge threshold {palette.merge_threshold:.0f}, "
      f"min pairwise delta-E {min_pairwise_delta_e(palette):.1f})")
for color, fraction in zip(palette.colors, palette.area_fractions):
    print(f"  {rgb_to_hex(color)}  {fraction:6.1%} of the image")

# A swatch strip makes the ordering around the hue wheel visible.
strip = np.zeros((40, 40 * len(palette), 3))
for k, color in enumerate(palette.colors):
    strip[:, 40 * k : 40 * (k + 1)] = color
save_png(image, out_dir / "palette_input.png")
save_png(Raster(strip), out_dir / "palette_swatches.png")
print(f"wrote input and swatch strip to {out_dir}")
