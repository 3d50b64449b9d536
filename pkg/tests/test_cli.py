"""Command line behavior: files written, determinism, config replay, errors."""

import json

import numpy as np
import pytest

from craftgen import cli, fileio
from craftgen.colors import Raster
from craftgen.evaluation import AnnotationMatrix
from conftest import gradient_image, grid_motif


@pytest.fixture(scope="module")
def assets(tmp_path_factory):
    root = tmp_path_factory.mktemp("assets")
    fileio.save_png(Raster(grid_motif(96)), root / "motif.png")
    fileio.save_png(Raster(gradient_image(64, 48)), root / "insp.png")
    return root


@pytest.fixture(scope="module")
def design_corpus(assets, tmp_path_factory):
    """A dozen small rendered designs plus a labeled dataset and a model."""
    corpus = tmp_path_factory.mktemp("corpus")
    rc = cli.main([
        "generate-blockprint", "--inspiration", str(assets / "insp.png"),
        "--count", "12", "--seed", "100", "--style", "recursive", "--depth", "2",
        "--rows", "2", "--cols", "2", "--px", "64", "--out-dir", str(corpus),
    ])
    assert rc == 0
    designs = sorted(corpus.glob("design_*.json"))
    assert len(designs) == 12
    lines = ["design,vote1,vote2,vote3,split"]
    for i, path in enumerate(designs):
        v = int(i % 2 == 0)
        split = "train" if i < 10 else "test"
        lines.append(f"{path.name},{v},{v},{int(i % 3 == 0)},{split}")
    (corpus / "dataset.csv").write_text("\n".join(lines) + "\n")
    rc = cli.main([
        "train-pruner", "--dataset", str(corpus / "dataset.csv"),
        "--out-dir", str(corpus), "--min-samples-leaf", "2",
        "--max-leaves", "4", "--n-trees", "3",
    ])
    assert rc == 0
    return corpus


class TestGenerateIkat:
    def test_writes_expected_files(self, assets, tmp_path, capsys):
        out = tmp_path / "out"
        rc = cli.main([
            "generate-ikat", "--motif", str(assets / "motif.png"),
            "--inspiration", str(assets / "insp.png"), "--count", "2",
            "--seed", "5", "--grid-n", "16", "--out-dir", str(out),
        ])
        assert rc == 0
        for seed in (5, 6):
            assert (out / f"ikat_{seed}.png").exists()
            assert (out / f"ikat_{seed}.csv").exists()
        assert (out / "generate-ikat-config.json").exists()
        stdout = capsys.readouterr().out
        assert "ikat seed=5" in stdout and "clipped_pixels=" in stdout

    def test_reruns_are_byte_identical(self, assets, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            rc = cli.main([
                "generate-ikat", "--motif", str(assets / "motif.png"),
                "--inspiration", str(assets / "insp.png"), "--seed", "9",
                "--grid-n", "16", "--out-dir", str(out),
            ])
            assert rc == 0
            outs.append(out)
        a, b = outs
        assert (a / "ikat_9.csv").read_bytes() == (b / "ikat_9.csv").read_bytes()
        assert (a / "ikat_9.png").read_bytes() == (b / "ikat_9.png").read_bytes()

    def test_missing_motif_exits_1_naming_path(self, assets, tmp_path, capsys):
        rc = cli.main([
            "generate-ikat", "--motif", str(tmp_path / "nope.png"),
            "--inspiration", str(assets / "insp.png"),
            "--out-dir", str(tmp_path / "out"),
        ])
        assert rc == 1
        err = capsys.readouterr().err
        assert err.startswith("error:") and "nope.png" in err
        assert not (tmp_path / "out").exists()


class TestGenerateBlockprint:
    def test_writes_designs_and_palette(self, assets, tmp_path, capsys):
        out = tmp_path / "bp"
        rc = cli.main([
            "generate-blockprint", "--inspiration", str(assets / "insp.png"),
            "--count", "3", "--seed", "40", "--depth", "2", "--rows", "2",
            "--cols", "2", "--px", "64", "--out-dir", str(out),
        ])
        assert rc == 0
        assert len(list(out.glob("design_*.json"))) == 3
        assert len(list(out.glob("design_*.png"))) == 3
        palette_doc = fileio.read_json(out / "palette.json")
        assert palette_doc["format"] == "craftgen-palette/1"
        assert "wrote 3 of 3 designs" in capsys.readouterr().out

    def test_prune_without_model_fails(self, assets, tmp_path, capsys):
        rc = cli.main([
            "generate-blockprint", "--inspiration", str(assets / "insp.png"),
            "--prune", "--out-dir", str(tmp_path / "out"),
        ])
        assert rc == 1
        assert "--model" in capsys.readouterr().err

    def test_config_echo_replays_byte_identically(self, assets, tmp_path):
        first = tmp_path / "first"
        rc = cli.main([
            "generate-blockprint", "--inspiration", str(assets / "insp.png"),
            "--count", "2", "--seed", "77", "--style", "block", "--chords", "3",
            "--shape", "hexagon", "--rows", "2", "--cols", "2", "--px", "64",
            "--out-dir", str(first),
        ])
        assert rc == 0
        echo = first / "generate-blockprint-config.json"
        assert json.loads(echo.read_text())["seed"] == 77
        second = tmp_path / "second"
        rc = cli.main([
            "generate-blockprint", "--config", str(echo),
            "--out-dir", str(second),
        ])
        assert rc == 0
        for name in ("design_77.json", "design_78.json", "palette.json",
                     "design_77.png", "design_78.png"):
            assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_config_with_unknown_key_exits_2(self, assets, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"swirliness": 3}\n')
        rc = cli.main([
            "generate-blockprint", "--inspiration", str(assets / "insp.png"),
            "--config", str(bad), "--out-dir", str(tmp_path / "out"),
        ])
        assert rc == 2
        assert "swirliness" in capsys.readouterr().err

    def test_pruning_with_model_logs_scores(self, assets, design_corpus,
                                            tmp_path, capsys):
        out = tmp_path / "pruned"
        rc = cli.main([
            "generate-blockprint", "--inspiration", str(assets / "insp.png"),
            "--count", "4", "--seed", "300", "--depth", "2", "--rows", "2",
            "--cols", "2", "--px", "64", "--prune",
            "--model", str(design_corpus / "model.json"), "--out-dir", str(out),
        ])
        assert rc == 0
        stdout = capsys.readouterr().out
        scored = [l for l in stdout.splitlines() if " score=" in l]
        assert len(scored) == 4
        kept = len(list(out.glob("design_*.json")))
        assert kept == sum(1 for l in scored if " kept " in f" {l} ")


class TestExtractPalette:
    def test_uniform_image_yields_one_color(self, tmp_path, capsys):
        img = tmp_path / "flat.png"
        fileio.save_png(Raster.full(16, 16, (0.2, 0.4, 0.8)), img)
        rc = cli.main([
            "extract-palette", "--image", str(img), "--out-dir", str(tmp_path),
        ])
        assert rc == 0
        doc = fileio.read_json(tmp_path / "palette.json")
        assert len(doc["colors"]) == 1
        assert doc["colors"][0] in capsys.readouterr().out

    def test_out_flag_and_size_bounds(self, assets, tmp_path):
        target = tmp_path / "pal" / "named.json"
        rc = cli.main([
            "extract-palette", "--image", str(assets / "insp.png"),
            "--out", str(target), "--out-dir", str(tmp_path),
        ])
        assert rc == 0
        doc = fileio.read_json(target)
        assert 1 <= len(doc["colors"]) <= 10


class TestTrainPruner:
    def test_reports_and_writes_model(self, design_corpus, capsys):
        model_doc = fileio.read_json(design_corpus / "model.json")
        assert model_doc["format"] == "craftgen-gbm/1"
        assert model_doc["hyperparams"]["n_trees"] == 3
        rc = cli.main([
            "train-pruner", "--dataset", str(design_corpus / "dataset.csv"),
            "--out", str(design_corpus / "model2.json"),
            "--out-dir", str(design_corpus),
            "--min-samples-leaf", "2", "--max-leaves", "4", "--n-trees", "3",
        ])
        assert rc == 0
        stdout = capsys.readouterr().out
        assert "train: n=10" in stdout and "test: n=2" in stdout
        assert "log_loss=" in stdout and "accuracy=" in stdout
        a = fileio.read_json(design_corpus / "model.json")
        b = fileio.read_json(design_corpus / "model2.json")
        assert a == b  # same dataset and hyperparams, deterministic trainer

    def test_single_class_dataset_fails(self, design_corpus, tmp_path, capsys):
        lines = ["design,vote1,vote2,vote3,split"]
        for path in sorted(design_corpus.glob("design_*.json")):
            lines.append(f"{path.resolve()},1,1,1,train")
        csv_path = tmp_path / "one-class.csv"
        csv_path.write_text("\n".join(lines) + "\n")
        rc = cli.main([
            "train-pruner", "--dataset", str(csv_path),
            "--out-dir", str(tmp_path), "--min-samples-leaf", "2",
            "--max-leaves", "4", "--n-trees", "2",
        ])
        assert rc == 1
        assert "degenerate labels" in capsys.readouterr().err


class TestPrune:
    def test_keeps_and_drops(self, design_corpus, tmp_path, capsys):
        out = tmp_path / "kept"
        rc = cli.main([
            "prune", "--model", str(design_corpus / "model.json"),
            "--designs", str(design_corpus), "--threshold", "0.5",
            "--out-dir", str(out),
        ])
        assert rc == 0
        stdout = capsys.readouterr().out
        keeps = [l for l in stdout.splitlines() if l.startswith("keep ")]
        drops = [l for l in stdout.splitlines() if l.startswith("drop ")]
        assert len(keeps) + len(drops) == 12
        assert f"kept {len(keeps)} of 12 designs" in stdout
        kept_json = sorted(out.glob("design_*.json"))
        assert len(kept_json) == len(keeps)
        for path in kept_json:
            assert (design_corpus / path.name).read_bytes() == path.read_bytes()
            assert (out / (path.stem + ".png")).exists()

    def test_no_designs_found_fails(self, design_corpus, tmp_path, capsys):
        empty = tmp_path / "empty"
        empty.mkdir()
        rc = cli.main([
            "prune", "--model", str(design_corpus / "model.json"),
            "--designs", str(empty), "--out-dir", str(tmp_path / "out"),
        ])
        assert rc == 1
        assert "no design documents" in capsys.readouterr().err


class TestEvaluate:
    def write_staircase(self, path, n=50):
        votes = np.zeros((n, n), dtype=bool)
        for i in range(n):
            votes[i, : i + 1] = True
        path.write_text(AnnotationMatrix(votes).to_csv_text())

    def test_prints_indices_and_writes_csv(self, tmp_path, capsys):
        stair = tmp_path / "stair.csv"
        self.write_staircase(stair)
        full = tmp_path / "full.csv"
        full.write_text(AnnotationMatrix(np.ones((4, 4), dtype=bool)).to_csv_text())
        report_csv = tmp_path / "report.csv"
        rc = cli.main([
            "evaluate", "--annotations", str(stair), str(full),
            "--labels", "raw", "pruned", "--out-csv", str(report_csv),
        ])
        assert rc == 0
        stdout = capsys.readouterr().out
        assert "raw" in stdout and "50" in stdout
        assert "pruned" in stdout and "100" in stdout
        lines = report_csv.read_text().splitlines()
        assert lines[0] == "set,likeability_index"
        assert lines[1] == "raw,50" and lines[2] == "pruned,100"

    def test_ragged_csv_fails(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("design,j0,j1\nd0,1\n")
        rc = cli.main(["evaluate", "--annotations", str(bad)])
        assert rc == 1
        assert "expected 2" in capsys.readouterr().err

    def test_label_count_mismatch_fails(self, tmp_path, capsys):
        stair = tmp_path / "stair.csv"
        self.write_staircase(stair, n=4)
        rc = cli.main([
            "evaluate", "--annotations", str(stair), "--labels", "a", "b",
        ])
        assert rc == 1
        assert "--labels" in capsys.readouterr().err


class TestInfrastructure:
    def test_no_temp_files_left_behind(self, assets, design_corpus, tmp_path):
        out = tmp_path / "clean"
        rc = cli.main([
            "generate-ikat", "--motif", str(assets / "motif.png"),
            "--inspiration", str(assets / "insp.png"), "--grid-n", "16",
            "--out-dir", str(out),
        ])
        assert rc == 0
        assert list(out.rglob("*.tmp")) == []
        assert list(design_corpus.rglob("*.tmp")) == []

    def test_thread_cap_preserves_output(self, assets, tmp_path, monkeypatch):
        outs = {}
        for name, cap in (("serial", "1"), ("threaded", "2")):
            out = tmp_path / name
            monkeypatch.setenv("CRAFTGEN_THREADS", cap)
            rc = cli.main([
                "generate-ikat", "--motif", str(assets / "motif.png"),
                "--inspiration", str(assets / "insp.png"), "--count", "3",
                "--seed", "10", "--grid-n", "16", "--out-dir", str(out),
            ])
            assert rc == 0
            outs[name] = out
        for seed in (10, 11, 12):
            assert (
                (outs["serial"] / f"ikat_{seed}.csv").read_bytes()
                == (outs["threaded"] / f"ikat_{seed}.csv").read_bytes()
            )

    def test_invalid_thread_cap_fails(self, assets, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("CRAFTGEN_THREADS", "many")
        rc = cli.main([
            "generate-ikat", "--motif", str(assets / "motif.png"),
            "--inspiration", str(assets / "insp.png"), "--count", "2",
            "--grid-n", "16", "--out-dir", str(tmp_path / "out"),
        ])
        assert rc == 1
        assert "CRAFTGEN_THREADS must be an integer" in capsys.readouterr().err

    def test_entropy_draws_fresh_seed(self, assets, tmp_path):
        seeds = []
        for name in ("e1", "e2"):
            out = tmp_path / name
            rc = cli.main([
                "generate-ikat", "--motif", str(assets / "motif.png"),
                "--inspiration", str(assets / "insp.png"), "--entropy",
                "--grid-n", "16", "--out-dir", str(out),
            ])
            assert rc == 0
            seeds.append(json.loads(
                (out / "generate-ikat-config.json").read_text()
            )["seed"])
        assert all(isinstance(s, int) and s >= 0 for s in seeds)
        assert seeds[0] != seeds[1]  # 32-bit draws; collisions are negligible
