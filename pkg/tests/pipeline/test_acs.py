"""
Tests for the multi-stage adaptive loop and the uniform baseline.
"""

import numpy as np
import pytest

from innovacs.exceptions import BudgetError, ConfigValueError, UnknownCriterionError
from innovacs.imaging.image import Image, grid_shape
from innovacs.metrics.quality import psnr
from innovacs.pipeline.acs import run_acs, run_uniform, uniform_counts
from innovacs.pipeline.run_config import RunConfig
from innovacs.sensing.ledger import round_half_up
from innovacs.solver.reconstruction import SolverConfig


# ===== Helpers =====


def quick_config(**overrides):
    """RunConfig with one-iteration solvers, for tests that only check bookkeeping."""
    settings = {
        "sr": 0.25,
        "block_size": 16,
        "ie_solver": SolverConfig(iterations=1),
        "final_solver": SolverConfig(iterations=1),
    }
    settings.update(overrides)
    return RunConfig(**settings)


def composite_image():
    """64x64 image: a noise quadrant top-left, three flat quadrants."""
    rng = np.random.default_rng(7)
    raster = np.empty((64, 64))
    raster[:32, :32] = rng.uniform(0.2, 0.8, size=(32, 32))
    raster[:32, 32:] = 0.3
    raster[32:, :32] = 0.5
    raster[32:, 32:] = 0.7
    return Image(raster)


# ===== RunConfig =====


def test_run_config_defaults():
    cfg = RunConfig(sr=0.25)
    assert (cfg.sr_init, cfg.stages, cfg.block_size, cfg.allocator, cfg.seed) == (
        0.02,
        4,
        32,
        "innovation",
        42,
    )
    assert (cfg.ie_solver.iterations, cfg.ie_solver.lambda_end) == (24, 0.02)
    assert (cfg.final_solver.iterations, cfg.final_solver.lambda_end) == (24, 0.005)
    assert cfg.ie_solver.accelerated and cfg.final_solver.accelerated
    assert not cfg.ie_solver.data_consistency and not cfg.final_solver.data_consistency


@pytest.mark.parametrize(
    "kwargs", [{"sr": 0.0}, {"sr": 1.5}, {"sr": 0.3, "stages": 0}, {"sr": 0.3, "block_size": 65}]
)
def test_run_config_rejects_invalid_settings(kwargs):
    with pytest.raises(ConfigValueError):
        RunConfig(**kwargs)


# ===== run_acs =====


def test_constant_image_falls_back_to_uniform_allocation():
    img = Image(np.full((64, 64), 0.6))
    recon, plan, traces = run_acs(img, RunConfig(sr=0.1))

    assert psnr(img, recon) >= 60.0
    for trace in traces:
        assert trace.total_score <= 1e-20 * len(trace.scores)
        assert max(trace.allocated) - min(trace.allocated) <= 1


def test_full_sampling_fills_every_block_and_is_exact():
    img = Image(np.random.default_rng(0).random((64, 64)))
    cfg = RunConfig(sr=1.0, block_size=16, ie_solver=SolverConfig(iterations=2))
    recon, plan, traces = run_acs(img, cfg)

    assert plan.final == (256,) * 16
    assert np.max(np.abs(recon.data - img.data)) <= 1e-8


def test_textured_quadrant_gets_more_samples():
    _, plan, _ = run_acs(composite_image(), RunConfig(sr=0.25, seed=42))
    textured, *flat = plan.final
    assert all(textured > count for count in flat)


def test_adaptive_beats_uniform_on_composite_image():
    img = composite_image()
    cfg = RunConfig(sr=0.25, seed=42)
    adaptive, _, _ = run_acs(img, cfg)
    uniform, _ = run_uniform(img, cfg)
    assert psnr(img, adaptive) > psnr(img, uniform)


def test_stage_records_match_the_ledger():
    img = composite_image()
    cfg = RunConfig(sr=0.25, seed=42)
    ledger = cfg.ledger(64, 64)
    _, plan, traces = run_acs(img, cfg)

    assert len(traces) == ledger.stages
    assert plan.initial == (ledger.init_per_block,) * 4
    for trace, pool in zip(traces, ledger.adaptive):
        assert trace.innovation_counts == (ledger.is_per_block,) * 4
        assert trace.budget == pool
        assert trace.carry == 0
        assert trace.criterion == "innovation"
    assert plan.total == ledger.total == 1024


def test_caps_hold_after_every_stage():
    img = Image(np.random.default_rng(1).random((48, 80)))
    cfg = quick_config(sr=0.6, stages=3)
    _, plan, traces = run_acs(img, cfg)

    for trace in traces:
        assert max(trace.cumulative) <= (trace.stage * 256) // 3
        assert trace.cap == (trace.stage * 256) // 3
    assert max(plan.final) <= 256


def test_budget_is_spent_exactly_on_random_configs():
    """200 end-to-end runs, B = 32, H and W in [33, 160], SR anywhere in (SR_init, 1]."""
    rng = np.random.default_rng(2024)
    rates = [0.0201, 0.021, 0.025, 0.03, 1.0]
    rates += [float(1.0 - rng.uniform(0.0, 0.98)) for _ in range(195)]
    for sr in rates:
        height, width = (int(v) for v in rng.integers(33, 161, size=2))
        stages = int(rng.integers(1, 7))
        img = Image(rng.random((height, width)))

        _, plan, traces = run_acs(img, quick_config(sr=sr, stages=stages, block_size=32))
        rows, cols = grid_shape(height, width, 32)
        assert plan.total == round_half_up(rows * cols * 1024 * sr)
        assert len(traces) == stages
        assert max(plan.final) <= 1024


def test_runs_are_deterministic():
    img = composite_image()
    cfg = quick_config(sr=0.3)
    first = run_acs(img, cfg)
    second = run_acs(img, cfg)

    assert first[0] == second[0]
    assert first[1] == second[1]
    assert first[2] == second[2]


def test_workers_do_not_change_the_result():
    img = composite_image()
    sequential = run_acs(img, quick_config(sr=0.3))
    parallel = run_acs(img, quick_config(sr=0.3, workers=4))

    assert sequential[0] == parallel[0]
    assert sequential[2] == parallel[2]


@pytest.mark.parametrize("allocator", ["error", "saliency", "uniform"])
def test_other_criteria_spend_the_same_budget(allocator):
    img = composite_image()
    _, plan, traces = run_acs(img, quick_config(allocator=allocator))
    assert plan.total == 1024
    assert {trace.criterion for trace in traces} == {allocator}


def test_trace_psnr_tracks_the_post_is_estimate():
    _, _, traces = run_acs(composite_image(), RunConfig(sr=0.25))
    assert all(trace.psnr > 0 for trace in traces)
    assert traces[-1].psnr >= traces[0].psnr


def test_rates_without_adaptive_budget_are_rejected():
    with pytest.raises(BudgetError):
        run_acs(composite_image(), RunConfig(sr=0.02))


def test_unknown_allocator_is_rejected():
    with pytest.raises(UnknownCriterionError):
        run_acs(composite_image(), quick_config(allocator="variance"))


# ===== uniform =====


def test_uniform_counts_example():
    assert uniform_counts(4, 32, 0.25) == (256, 256, 256, 256)


def test_uniform_counts_correct_the_total():
    counts = uniform_counts(9, 32, 0.1)
    assert sum(counts) == round_half_up(9 * 1024 * 0.1)
    assert max(counts) - min(counts) <= 1


def test_uniform_counts_on_random_configs():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 40))
        block_size = int(rng.integers(1, 33))
        sr = float(rng.uniform(0.01, 1.0))

        counts = uniform_counts(n, block_size, sr)
        assert sum(counts) == round_half_up(n * block_size**2 * sr)
        assert max(counts) - min(counts) <= 1
        assert max(counts) <= block_size**2


def test_uniform_full_sampling_is_exact():
    img = Image(np.random.default_rng(3).random((96, 96)))
    recon, plan = run_uniform(img, RunConfig(sr=1.0))

    assert plan.stages == []
    assert plan.final == (1024,) * 9
    assert np.max(np.abs(recon.data - img.data)) <= 1e-8
