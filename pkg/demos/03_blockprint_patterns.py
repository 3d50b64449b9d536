"""
Block-print patterns from divided base shapes
=============================================

A square, triangle or hexagon is cut into regions by chords, colored so
that touching regions never share a color, and tiled across a board with
per-tile rotations. Every pixel of the render is an exact palette color.
"""

from pathlib import Path

from craftgen import (
    BaseShape,
    RgbColor,
    block_divide,
    recursive_divide,
    render_pattern,
    tile_pattern,
)
from craftgen.fileio import save_png

out_dir = Path(__file__).parent / "demo-out"

palette = [
    RgbColor(0.86, 0.20, 0.18),  # madder red
    RgbColor(0.98, 0.75, 0.14),  # turmeric
    RgbColor(0.16, 0.45, 0.70),  # indigo
    RgbColor(0.93, 0.90, 0.82),  # unbleached cotton
    RgbColor(0.13, 0.35, 0.25),  # deep green
]

# Recursive bisection doubles the region count at every depth step.
for kind in ("square", "triangle", "hexagon"):
    block = recursive_divide(BaseShape(kind), depth=3, seed=7)
    print(f"{kind}: recursive depth 3 -> {len(block.regions)} regions")
    pattern = tile_pattern(block, rows=3, cols=4, rotation_policy="random", seed=7)
    save_png(render_pattern(pattern, palette, px=480),
             out_dir / f"blockprint_recursive_{kind}.png")

# Block style draws independent chords clear across the shape instead.
block = block_divide(BaseShape("square"), n_chords=4, seed=21)
print(f"square: 4 straight-through chords -> {len(block.regions)} regions")
pattern = tile_pattern(block, rows=3, cols=3, rotation_policy="fixed",
                       seed=0, fixed_angle=90)
save_png(render_pattern(pattern, palette, px=480),
         out_dir / "blockprint_block_square.png")

print(f"wrote 4 patterns to {out_dir}")
