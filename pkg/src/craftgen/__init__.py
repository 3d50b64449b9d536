"""Generative textile design toolkit.

Two pipelines produce production-ready designs: Ikat (motif colorization,
statistical color transfer, grid quantization) and Block Print (divided
base shapes tiled with rotations and flat palette fills). Support modules
extract palettes from inspiration images, prune weak designs with a small
boosted-trees model, and score design sets with a likeability index.
"""

from .colors import (
    ChannelStats,
    HsvColor,
    LabColor,
    Raster,
    RgbColor,
    channel_stats,
    delta_e_ciede2000,
    hex_to_rgb,
    lab_to_rgb,
    reinhard_transfer,
    rgb_to_hex,
    rgb_to_hsv,
    rgb_to_lab,
)
from .ikat import (
    GridDesign,
    Motif,
    PrimitivePalette,
    colorize_stage,
    grid_quantize,
    primitive_colorize,
    run_ikat_pipeline,
    transfer_from_inspiration,
)
from .blockprint import (
    BaseShape,
    BlockDesign,
    Chord,
    Pattern,
    block_divide,
    recursive_divide,
    render_pattern,
    tile_pattern,
)
from .palette import (
    Palette,
    WeightedColor,
    extract_palette,
    merge_similar,
    min_pairwise_delta_e,
    prominence,
    quantize_colors,
)
from .pruning import (
    FeatureVector,
    GbmHyperparams,
    GbmModel,
    LabeledDesign,
    area_fractions,
    darkness_class,
    dullness_score,
    extract_features,
    global_contrast,
    harmony_type,
    predict,
    prune,
    train_gbm,
)
from .evaluation import (
    AnnotationMatrix,
    ComparisonReport,
    LikeabilityReport,
    compare_report,
    like_rates,
    likeability_index,
    likeability_report,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationMatrix",
    "BaseShape",
    "BlockDesign",
    "ChannelStats",
    "Chord",
    "ComparisonReport",
    "FeatureVector",
    "GbmHyperparams",
    "GbmModel",
    "GridDesign",
    "HsvColor",
    "LabColor",
    "LabeledDesign",
    "LikeabilityReport",
    "Motif",
    "Palette",
    "Pattern",
    "PrimitivePalette",
    "Raster",
    "RgbColor",
    "WeightedColor",
    "area_fractions",
    "block_divide",
    "channel_stats",
    "colorize_stage",
    "compare_report",
    "darkness_class",
    "delta_e_ciede2000",
    "dullness_score",
    "extract_features",
    "extract_palette",
    "global_contrast",
    "grid_quantize",
    "harmony_type",
    "hex_to_rgb",
    "lab_to_rgb",
    "like_rates",
    "likeability_index",
    "likeability_report",
    "merge_similar",
    "min_pairwise_delta_e",
    "predict",
    "primitive_colorize",
    "prominence",
    "prune",
    "quantize_colors",
    "recursive_divide",
    "reinhard_transfer",
    "render_pattern",
    "rgb_to_hex",
    "rgb_to_hsv",
    "rgb_to_lab",
    "run_ikat_pipeline",
    "tile_pattern",
    "train_gbm",
    "transfer_from_inspiration",
]
