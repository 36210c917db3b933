"""
Tests for AllocationPlan bookkeeping.
"""

import pytest

from innovacs.allocation.plan import AllocationPlan


def test_uniform_plan_has_only_initial_counts():
    plan = AllocationPlan(block_size=4, initial=(3, 3, 2))
    assert plan.num_blocks == 3
    assert plan.final == (3, 3, 2)
    assert plan.total == 8


def test_add_stage_accumulates_counts():
    plan = AllocationPlan(block_size=4, initial=(1, 1))
    first = plan.add_stage(1, innovation_counts=(1, 1), adaptive=(4, 0), carry=0, cap=8)
    second = plan.add_stage(2, innovation_counts=(1, 1), adaptive=(1, 5), carry=0, cap=16)

    assert first.cumulative == (6, 2)
    assert first.budget == 4
    assert second.cumulative == (8, 8)
    assert plan.final == (8, 8)
    assert plan.total == 16


@pytest.mark.parametrize("stage,expected", [(1, (1, 1)), (2, (6, 2)), (3, (8, 8))])
def test_cumulative_before(stage, expected):
    plan = AllocationPlan(block_size=4, initial=(1, 1))
    plan.add_stage(1, innovation_counts=(1, 1), adaptive=(4, 0), carry=0, cap=8)
    plan.add_stage(2, innovation_counts=(1, 1), adaptive=(1, 5), carry=0, cap=16)
    assert plan.cumulative_before(stage) == expected
