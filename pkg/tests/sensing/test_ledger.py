"""
Tests for the sampling budget ledger.
"""

import numpy as np
import pytest

from innovacs.exceptions import BudgetError
from innovacs.sensing.ledger import make_ledger, round_half_up


# ===== Helpers =====


def accounted(ledger):
    n = ledger.num_blocks
    return (
        n * ledger.init_per_block + ledger.stages * n * ledger.is_per_block + sum(ledger.adaptive)
    )


# ===== Tests =====


def test_round_half_up():
    assert [round_half_up(v) for v in (0.5, 1.5, 2.49, -0.5)] == [1, 2, 2, 0]


def test_ledger_example_64x64():
    ledger = make_ledger(64, 64, 32, 0.25, sr_init=0.02, stages=4)

    assert ledger.num_blocks == 4
    assert ledger.init_per_block == 20
    assert ledger.is_per_block == 29
    assert ledger.adaptive == (118, 118, 118, 126)
    assert ledger.total == 1024
    assert accounted(ledger) == 1024


def test_default_innovation_rate():
    ledger = make_ledger(64, 64, 32, 0.26, sr_init=0.02, stages=4)
    assert ledger.sr_is == pytest.approx(0.03)


def test_single_stage_accounts_for_total():
    ledger = make_ledger(96, 96, 32, 0.3, stages=1)

    assert len(ledger.adaptive) == 1
    assert accounted(ledger) == ledger.total == round_half_up(9 * 1024 * 0.3)


def test_sr_equal_to_sr_init_is_rejected():
    with pytest.raises(BudgetError):
        make_ledger(64, 64, 32, 0.02, sr_init=0.02)


def test_innovation_rate_leaving_no_adaptive_budget_is_rejected():
    # (sr - sr_init) / S = 0.05
    with pytest.raises(BudgetError):
        make_ledger(64, 64, 32, 0.22, sr_init=0.02, stages=4, sr_is=0.05)


def test_zero_stages_rejected():
    with pytest.raises(BudgetError):
        make_ledger(64, 64, 32, 0.25, stages=0)


def test_stage_caps_use_floor():
    ledger = make_ledger(64, 64, 32, 0.25, stages=3)
    assert [ledger.stage_cap(s) for s in (1, 2, 3)] == [341, 682, 1024]


def test_ledger_records_are_ordered_text():
    records = dict(make_ledger(64, 64, 32, 0.25).as_records())

    assert records["total"] == "1024"
    assert records["adaptive_stage_4"] == "126"
    assert records["stages"] == "4"


def test_budget_conservation_over_fuzzed_configs():
    """200 random configurations: the ledger always accounts for exactly T samples."""
    rng = np.random.default_rng(2024)
    rates = [0.0201, 0.021, 0.025, 0.03, 1.0]
    rates += [float(1.0 - rng.uniform(0.0, 0.98)) for _ in range(195)]
    for sr in rates:
        height, width = (int(v) for v in rng.integers(33, 161, size=2))
        stages = int(rng.integers(1, 7))
        ledger = make_ledger(height, width, 32, sr, sr_init=0.02, stages=stages)

        assert ledger.total == round_half_up(ledger.num_blocks * 1024 * sr)
        assert accounted(ledger) == ledger.total
        assert all(pool >= 0 for pool in ledger.adaptive)
