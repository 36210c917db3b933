import importlib

import numpy as np
import pandas as pd
import pytest

from innovacs.imaging.image import Image
from innovacs.imaging.pgm import load_pgm, save_pgm
from innovacs.reporting.trace_logger import read_trace


def _write_inputs(tmp_path):
    """Write a small test image and a config with fast solver settings."""
    raster = np.full((40, 40), 0.5)
    raster[:16, 16:32] = np.random.default_rng(0).random((16, 16))
    image_path = tmp_path / "tile.pgm"
    save_pgm(Image(raster), image_path)

    config_path = tmp_path / "fast.cfg"
    config_path.write_text(
        "block_size = 16\nie_iterations = 1\nfinal_iterations = 3\n", encoding="utf-8"
    )
    return str(image_path), str(config_path)


def _snapshot(directory):
    return {
        str(path.relative_to(directory)): path.read_bytes()
        for path in sorted(directory.rglob("*"))
        if path.is_file()
    }


def test_gen_corpus_writes_sixteen_images(tmp_path):
    """gen-corpus writes the named corpus as PGM files."""
    module = importlib.import_module("innovacs.cli")
    out = tmp_path / "corpus"

    assert module.main(["gen-corpus", "--corpus", "heterogeneous16", "--out", str(out)]) == 0

    files = sorted(p.name for p in out.iterdir())
    assert len(files) == 16
    assert files[0] == "heterogeneous16_00.pgm"
    assert load_pgm(out / files[0]).shape == (96, 96)


def test_run_writes_summary_and_artifacts(tmp_path):
    """acs run writes the summary plus per-run artifacts; psnr matches the trace."""
    module = importlib.import_module("innovacs.cli")
    image_path, config_path = _write_inputs(tmp_path)
    out = tmp_path / "out"

    status = module.main(
        ["run", "--config", config_path, "--image", image_path, "--sr", "0.3", "--out", str(out)]
    )

    assert status == 0
    summary = pd.read_csv(out / "summary.csv")
    assert summary.columns.tolist() == ["image", "criterion", "psnr", "ssim", "total_samples"]
    assert summary["image"].tolist() == ["tile"]
    assert summary["criterion"].tolist() == ["innovation"]
    assert summary["total_samples"].tolist() == [round(9 * 256 * 0.3)]

    run_dir = out / "tile" / "innovation"
    final = next(r for r in read_trace(str(run_dir / "trace.tsv")) if r[0] == "final")
    assert float(final[1]) == pytest.approx(summary["psnr"][0], rel=1e-12)
    assert float(final[2]) == pytest.approx(summary["ssim"][0], rel=1e-12)
    assert (run_dir / "recon.pgm").exists()
    assert (run_dir / "heatmap_stage4.csv").exists()
    assert not (out / "feedback.csv").exists()


def test_rerun_is_byte_identical(tmp_path):
    """Two runs with the same settings produce identical directories."""
    module = importlib.import_module("innovacs.cli")
    image_path, config_path = _write_inputs(tmp_path)
    first, second = tmp_path / "first", tmp_path / "second"

    for out in (first, second):
        args = ["run", "--config", config_path, "--image", image_path, "--out", str(out)]
        assert module.main(args) == 0

    assert _snapshot(first) == _snapshot(second)


def test_compare_writes_feedback_and_equal_budgets(tmp_path):
    """acs compare runs every listed criterion with the same budget."""
    module = importlib.import_module("innovacs.cli")
    image_path, config_path = _write_inputs(tmp_path)
    out = tmp_path / "out"

    status = module.main(
        [
            "compare",
            "--config",
            config_path,
            "--image",
            image_path,
            "--criteria",
            "innovation,error,uniform",
            "--out",
            str(out),
        ]
    )

    assert status == 0
    summary = pd.read_csv(out / "summary.csv")
    assert summary["criterion"].tolist() == ["innovation", "error", "uniform"]
    assert summary["total_samples"].nunique() == 1

    feedback = pd.read_csv(out / "feedback.csv")
    assert feedback["criterion"].tolist() == ["innovation", "error", "uniform"]
    assert feedback["transitions"].tolist() == [3, 3, 0]

    heatmap = np.loadtxt(out / "tile" / "uniform" / "heatmap_final.csv", delimiter=",")
    assert heatmap.max() - heatmap.min() <= 1


def test_sweep_writes_table(tmp_path):
    """acs sweep writes one row per rate and criterion."""
    module = importlib.import_module("innovacs.cli")
    image_path, config_path = _write_inputs(tmp_path)
    out = tmp_path / "out"

    status = module.main(
        [
            "sweep",
            "--config",
            config_path,
            "--image",
            image_path,
            "--criteria",
            "innovation,uniform",
            "--rates",
            "0.1,0.3",
            "--out",
            str(out),
        ]
    )

    assert status == 0
    sweep = pd.read_csv(out / "sweep.csv")
    assert sweep["sr"].tolist() == [0.1, 0.1, 0.3, 0.3]
    assert sweep["criterion"].tolist() == ["innovation", "uniform"] * 2


def test_missing_input_fails(tmp_path, capsys):
    """Without --image or --corpus the CLI exits with status 1."""
    module = importlib.import_module("innovacs.cli")

    assert module.main(["run", "--out", str(tmp_path / "out")]) == 1
    assert "No input given" in capsys.readouterr().err


def test_invalid_rate_fails(tmp_path, capsys):
    module = importlib.import_module("innovacs.cli")
    image_path, _ = _write_inputs(tmp_path)

    assert module.main(["run", "--image", image_path, "--sr", "1.5"]) == 1
    assert "sr" in capsys.readouterr().err


def test_unreadable_image_fails(tmp_path, capsys):
    module = importlib.import_module("innovacs.cli")
    broken = tmp_path / "broken.pgm"
    broken.write_bytes(b"P2\n2 2\n255\n0 0 0 0\n")

    assert module.main(["run", "--image", str(broken), "--out", str(tmp_path / "o")]) == 1
    assert "Error" in capsys.readouterr().err


def test_verbose_logs_to_stderr(tmp_path, capsys):
    module = importlib.import_module("innovacs.cli")
    image_path, config_path = _write_inputs(tmp_path)

    args = ["run", "--config", config_path, "--image", image_path, "--out", str(tmp_path / "o")]
    assert module.main(args + ["--verbose"]) == 0

    captured = capsys.readouterr()
    assert "[tile] innovation" in captured.err
    assert captured.out == ""


def test_flags_only_include_given_options():
    """Options that were not passed map to None so the config file can fill them."""
    module = importlib.import_module("innovacs.cli")
    args = module.build_parser().parse_args(["run", "--image", "a.pgm", "--sr", "0.2"])

    flags = module._flags(args)

    assert flags["image"] == ["a.pgm"]
    assert flags["sr"] == 0.2
    assert flags["seed"] is None
    assert "criteria" not in flags
