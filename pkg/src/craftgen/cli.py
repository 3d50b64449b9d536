"""Command line front end for the design pipelines.

Subcommands: generate-ikat, generate-blockprint, extract-palette,
train-pruner, prune, evaluate. Every command accepts --config (a JSON file
of defaults), --seed, --entropy and --out-dir; each run that writes files
also writes a config echo that replays the run byte-for-byte when passed
back through --config. CRAFTGEN_THREADS caps batch parallelism.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import blockprint, evaluation, fileio, ikat, palette, pruning

DEFAULT_SEED = 1234
_ECHO_EXCLUDE = ("func", "command", "config", "entropy")


def _thread_count(n_tasks: int) -> int:
    raw = os.environ.get("CRAFTGEN_THREADS", "").strip()
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError("CRAFTGEN_THREADS must be an integer") from None
        if cap >= 1:
            return min(cap, n_tasks)
    return max(1, min(n_tasks, os.cpu_count() or 1, 8))


def _run_parallel(fn, items):
    """Map fn over items, preserving order; threads bounded by the env cap."""
    items = list(items)
    workers = _thread_count(len(items))
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, item) for item in items]
        return [f.result() for f in futures]


def _echo_config(args: argparse.Namespace, directory: Path) -> Path:
    """Write the resolved parameters; feeding them back via --config replays."""
    doc = {k: v for k, v in vars(args).items() if k not in _ECHO_EXCLUDE}
    path = directory / f"{args.command}-config.json"
    fileio.write_json(path, doc)
    return path


# ---------------------------------------------------------------------------
# commands

def cmd_generate_ikat(args: argparse.Namespace) -> int:
    motif = ikat.Motif(fileio.load_image(args.motif), threshold=args.motif_threshold)
    inspiration = fileio.load_image(args.inspiration)
    out_dir = Path(args.out_dir)
    seeds = [args.seed + i for i in range(args.count)]

    def build(seed: int):
        grid, clips = ikat.run_ikat_pipeline(
            motif, inspiration, seed=seed, n=args.grid_n, with_clip_count=True
        )
        return seed, grid, clips

    for seed, grid, clips in _run_parallel(build, seeds):
        png_path = out_dir / f"ikat_{seed}.png"
        csv_path = out_dir / f"ikat_{seed}.csv"
        fileio.save_png(grid.to_raster(args.cell_px), png_path)
        fileio.write_text(csv_path, grid.to_csv_text())
        print(f"ikat seed={seed} clipped_pixels={clips} -> {png_path} {csv_path}")
    _echo_config(args, out_dir)
    return 0


def cmd_generate_blockprint(args: argparse.Namespace) -> int:
    if args.prune and not args.model:
        raise ValueError("pruning requested without a model path (use --model)")
    model = None
    if args.model:
        model = pruning.GbmModel.from_json_dict(fileio.read_json(args.model))
    inspiration = fileio.load_image(args.inspiration)
    pal = palette.extract_palette(inspiration, max_colors=args.max_colors)
    out_dir = Path(args.out_dir)
    fileio.write_json(out_dir / "palette.json", pal.to_json_dict())
    shape = blockprint.BaseShape(args.shape)

    def build(seed: int):
        if args.style == "recursive":
            block = blockprint.recursive_divide(shape, args.depth, seed)
        else:
            block = blockprint.block_divide(shape, args.chords, seed)
        pat = blockprint.tile_pattern(
            block, args.rows, args.cols, args.rotation, seed, args.fixed_angle
        )
        return seed, pat, blockprint.render_pattern(pat, pal.colors, args.px)

    kept = 0
    for seed, pat, img in _run_parallel(build, [args.seed + i for i in range(args.count)]):
        if model is not None:
            score = pruning.predict(model, pruning.extract_features(img))
            if score < args.prune_threshold:
                print(f"blockprint seed={seed} pruned score={score:.3f}")
                continue
            print(f"blockprint seed={seed} kept score={score:.3f}")
        json_path = out_dir / f"design_{seed}.json"
        png_path = out_dir / f"design_{seed}.png"
        fileio.write_json(json_path, fileio.make_design_doc(pat, pal, args.px))
        fileio.save_png(img, png_path)
        kept += 1
        print(f"blockprint seed={seed} -> {json_path} {png_path}")
    _echo_config(args, out_dir)
    print(f"wrote {kept} of {args.count} designs, palette of {len(pal)} colors")
    return 0


def cmd_extract_palette(args: argparse.Namespace) -> int:
    img = fileio.load_image(args.image)
    pal = palette.extract_palette(img, max_colors=args.max_colors)
    out = Path(args.out) if args.out else Path(args.out_dir) / "palette.json"
    fileio.write_json(out, pal.to_json_dict())
    hexes = " ".join(pal.to_json_dict()["colors"])
    print(f"palette {len(pal)} colors -> {out}")
    print(hexes)
    _echo_config(args, out.parent)
    return 0


def _featurize_doc(path: Path, px_override: int | None) -> pruning.FeatureVector:
    doc = fileio.load_design_doc(path)
    if px_override:
        doc = dict(doc, px=px_override)
    return pruning.extract_features(fileio.render_design_doc(doc))


def cmd_train_pruner(args: argparse.Namespace) -> int:
    rows = pruning.dataset_rows_from_csv(fileio.read_text(args.dataset))
    if not rows:
        raise ValueError("dataset CSV has no rows")
    base = Path(args.dataset).parent

    def featurize(row: pruning.DatasetRow):
        path = Path(row.design_path)
        if not path.is_absolute():
            path = base / path
        fv = _featurize_doc(path, args.feature_px)
        return pruning.LabeledDesign(fv, row.votes), row.split

    labeled = _run_parallel(featurize, rows)
    train = [ld for ld, split in labeled if split == "train"]
    test = [ld for ld, split in labeled if split == "test"]
    if not train:
        raise ValueError("dataset has no rows with split=train")
    hp = pruning.GbmHyperparams(
        learning_rate=args.learning_rate,
        max_leaves=args.max_leaves,
        min_samples_leaf=args.min_samples_leaf,
        n_trees=args.n_trees,
    )
    model = pruning.train_gbm(train, hp, seed=args.seed)

    import numpy as np

    def report(name: str, subset: list[pruning.LabeledDesign]) -> None:
        if not subset:
            print(f"{name}: no rows")
            return
        X = np.stack([d.features.to_array() for d in subset])
        y = np.array([float(d.label) for d in subset])
        p = pruning.predict_arrays(model, X)
        acc = float(((p >= 0.5) == y.astype(bool)).mean())
        print(f"{name}: n={len(subset)} log_loss={pruning.log_loss(y, p):.4f} "
              f"accuracy={acc:.3f}")

    report("train", train)
    report("test", test)
    out = Path(args.out) if args.out else Path(args.out_dir) / "model.json"
    fileio.write_json(out, model.to_json_dict())
    print(f"model -> {out}")
    _echo_config(args, out.parent)
    return 0


def _expand_design_paths(paths: list[str]) -> list[Path]:
    out: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            for child in sorted(p.glob("*.json")):
                try:
                    fileio.load_design_doc(child)
                except ValueError:
                    continue  # palette/config/model JSONs live alongside designs
                out.append(child)
        else:
            out.append(p)
    return out


def cmd_prune(args: argparse.Namespace) -> int:
    model = pruning.GbmModel.from_json_dict(fileio.read_json(args.model))
    paths = _expand_design_paths(args.designs)
    if not paths:
        raise ValueError("no design documents found")
    out_dir = Path(args.out_dir)

    def score(path: Path):
        doc = fileio.load_design_doc(path)
        fv = _featurize_doc(path, args.feature_px)
        return path, doc, pruning.predict(model, fv)

    kept = 0
    for path, doc, prob in _run_parallel(score, paths):
        if prob >= args.threshold:
            fileio.write_json(out_dir / path.name, doc)
            fileio.save_png(fileio.render_design_doc(doc),
                            out_dir / (path.stem + ".png"))
            kept += 1
            print(f"keep {path} score={prob:.3f}")
        else:
            print(f"drop {path} score={prob:.3f}")
    print(f"kept {kept} of {len(paths)} designs -> {out_dir}")
    _echo_config(args, out_dir)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    if args.labels and len(args.labels) != len(args.annotations):
        raise ValueError("--labels must match --annotations in count")
    entries = []
    for i, path in enumerate(args.annotations):
        matrix = evaluation.AnnotationMatrix.from_csv_text(fileio.read_text(path))
        label = args.labels[i] if args.labels else Path(path).stem
        entries.append((label, matrix))
    report = evaluation.compare_report(entries)
    print(report.to_text(), end="")
    if args.out_csv:
        fileio.write_text(args.out_csv, report.to_csv_text())
        print(f"report -> {args.out_csv}")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="craftgen",
        description="Generative textile designs: Ikat and Block Print pipelines.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    registry: dict[str, argparse.ArgumentParser] = {}

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None,
                       help="JSON file of parameter defaults for this command")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="base random seed (fixed default for reproducibility)")
        p.add_argument("--entropy", action="store_true",
                       help="draw the seed from the OS entropy pool instead")
        p.add_argument("--out-dir", default="craftgen-out",
                       help="directory for output files")
        p.set_defaults(func=func)
        registry[name] = p
        return p

    p = add("generate-ikat", cmd_generate_ikat, "motif + inspiration -> grid designs")
    p.add_argument("--motif", required=True, help="grayscale motif image path")
    p.add_argument("--inspiration", required=True, help="inspiration image path")
    p.add_argument("--count", type=int, default=1, help="designs to generate")
    p.add_argument("--grid-n", type=int, default=128, help="design grid side length")
    p.add_argument("--cell-px", type=int, default=4, help="pixels per grid cell in the PNG")
    p.add_argument("--motif-threshold", type=float, default=0.5,
                   help="light/dark binarization threshold")

    p = add("generate-blockprint", cmd_generate_blockprint,
            "inspiration -> tiled block designs")
    p.add_argument("--inspiration", required=True, help="inspiration image path")
    p.add_argument("--count", type=int, default=1, help="designs to generate")
    p.add_argument("--style", choices=("recursive", "block"), default="recursive",
                   help="division style for the block")
    p.add_argument("--shape", choices=blockprint.SHAPE_KINDS, default="square")
    p.add_argument("--chords", type=int, default=4, help="chord count (block style)")
    p.add_argument("--depth", type=int, default=4, help="bisection depth (recursive style)")
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--rotation", choices=("none", "random", "fixed"), default="random")
    p.add_argument("--fixed-angle", type=int, default=0,
                   help="cell rotation when --rotation fixed")
    p.add_argument("--px", type=int, default=512, help="render width in pixels")
    p.add_argument("--max-colors", type=int, default=10, help="palette size cap")
    p.add_argument("--prune", action="store_true", help="apply a pruning model")
    p.add_argument("--model", default=None, help="trained pruning model JSON")
    p.add_argument("--prune-threshold", type=float, default=0.5)

    p = add("extract-palette", cmd_extract_palette, "image -> palette JSON")
    p.add_argument("--image", required=True, help="inspiration image path")
    p.add_argument("--max-colors", type=int, default=10)
    p.add_argument("--out", default=None, help="palette JSON path (default out-dir/palette.json)")

    p = add("train-pruner", cmd_train_pruner, "dataset CSV -> pruning model JSON")
    p.add_argument("--dataset", required=True,
                   help="CSV: design path, three 0/1 votes, train/test split")
    p.add_argument("--out", default=None, help="model JSON path (default out-dir/model.json)")
    p.add_argument("--feature-px", type=int, default=0,
                   help="render width for features (0 = each design's own size)")
    p.add_argument("--learning-rate", type=float, default=0.3)
    p.add_argument("--max-leaves", type=int, default=85)
    p.add_argument("--min-samples-leaf", type=int, default=50)
    p.add_argument("--n-trees", type=int, default=100)

    p = add("prune", cmd_prune, "filter design JSONs through a pruning model")
    p.add_argument("--model", required=True, help="trained pruning model JSON")
    p.add_argument("--designs", nargs="+", required=True,
                   help="design JSON files or directories of them")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--feature-px", type=int, default=0,
                   help="render width for features (0 = each design's own size)")

    p = add("evaluate", cmd_evaluate, "annotation CSVs -> likeability report")
    p.add_argument("--annotations", nargs="+", required=True,
                   help="annotation CSV paths (judge header, 0/1 rows)")
    p.add_argument("--labels", nargs="*", default=None,
                   help="report labels, one per annotations file")
    p.add_argument("--out-csv", default=None, help="also write the report as CSV")

    return parser, registry


def _valid_dests(p: argparse.ArgumentParser) -> set[str]:
    # argparse keeps its registered actions on a private list; stable since 2.7
    return {action.dest for action in p._actions if action.dest != "help"}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()
    if argv and argv[0] in registry:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config", default=None)
        known, _ = pre.parse_known_args(argv[1:])
        if known.config:
            try:
                cfg = fileio.read_json(known.config)
            except (OSError, ValueError) as exc:
                print(f"error: cannot load config: {exc}", file=sys.stderr)
                return 1
            unknown = set(cfg) - _valid_dests(registry[argv[0]])
            if unknown:
                print(f"error: unknown config keys for {argv[0]}: "
                      f"{', '.join(sorted(unknown))}", file=sys.stderr)
                return 2
            registry[argv[0]].set_defaults(**cfg)
            for action in registry[argv[0]]._actions:
                if action.dest in cfg:  # a config value satisfies required flags
                    action.required = False
    args = parser.parse_args(argv)
    if args.entropy:
        args.seed = int.from_bytes(os.urandom(4), "little")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
