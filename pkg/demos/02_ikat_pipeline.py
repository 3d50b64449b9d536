"""
Ikat-style designs from a motif and an inspiration image
========================================================

A binary motif supplies the weave structure: dark strokes stay black and
every connected light region receives one flat primitive color. The
inspiration image then recolors the whole design through statistical
transfer, and the result is quantized onto a coarse thread grid.
"""

from pathlib import Path

import numpy as np

from craftgen import Motif, Raster, run_ikat_pipeline
from craftgen.fileio import save_png

out_dir = Path(__file__).parent / "demo-out"

# Motif: a hand-drawn-looking lattice of dark lines on a light ground.
size, step = 192, 16
gray = np.full((size, size), 0.95)
for k in range(0, size, step):
    gray[k : k + 2, :] = 0.1
    gray[:, k : k + 2] = 0.1
gray[size // 4 : size // 4 + 3, :] = 0.95  # break a few lines for variety
motif = Motif(Raster(np.repeat(gray[:, :, None], 3, axis=2)))

# Inspiration: a small warm-to-cool gradient.
yy, xx = np.mgrid[0:64, 0:96]
inspiration = Raster(np.stack([
    0.5 + 0.4 * np.sin(xx / 18.0),
    0.5 + 0.3 * np.cos(yy / 12.0),
    0.5 + 0.4 * np.sin((xx + yy) / 24.0),
], axis=-1) * 0.5 + 0.25)

# Same motif, three seeds: the primitive coloring differs per seed while
# the imposed inspiration statistics stay the same.
for seed in (1, 2, 3):
    grid = run_ikat_pipeline(motif, inspiration, seed=seed, n=64)
    save_png(grid.to_raster(cell_px=6), out_dir / f"ikat_seed{seed}.png")
    first_rows = grid.to_csv_text().splitlines()[:4]
    print(f"seed {seed}: grid {grid.cells.shape[0]}x{grid.cells.shape[1]}, "
          f"csv starts {first_rows[1]} {first_rows[2]}")

print(f"wrote 3 designs to {out_dir}")
