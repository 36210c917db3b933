"""The multi-stage adaptive sensing loop and its uniform baseline.

An adaptive run first measures every block with the same small count.
Each of the S stages then

    IS  appends a uniform batch of innovation samples to every block,
    IE  reconstructs the image before and after those samples with the
        innovation-estimator solver and scores every block with the criterion,
    AS  splits the stage budget over the blocks in proportion to their
        scores, under the cumulative cap floor((s / S) * B^2),

and a final full solver reconstructs the image from all measurements.
Samples that cannot be placed in a stage (innovation rows clipped at capacity,
budget above the cap) move on to the next stage, so every run spends
exactly T = round(N * B^2 * SR) samples.
"""

from __future__ import annotations

from ..allocation.apportion import apportion
from ..allocation.criteria import StageContext, get_criterion
from ..allocation.plan import AllocationPlan
from ..exceptions import BudgetError
from ..imaging.image import Image, partition
from ..metrics.quality import psnr
from ..sensing.ledger import round_half_up
from ..sensing.measurements import MeasurementSet, sample_more
from ..solver.reconstruction import reconstruct
from .run_config import RunConfig
from .stage_trace import StageTrace


def run_acs(
    img: Image, cfg: RunConfig
) -> tuple[Image, AllocationPlan, list[StageTrace]]:
    """
    Sense and reconstruct *img* with the multi-stage adaptive scheme.

    Args:
        img (Image): Ground truth being sensed.
        cfg (RunConfig): Rates, stages, criterion and solvers.

    Returns:
        tuple: The final reconstruction, the allocation plan, and one
            ``StageTrace`` per stage.

    Raises:
        BudgetError: If the rates leave no adaptive budget.
        UnknownCriterionError: If ``cfg.allocator`` is not registered.
    """
    ledger = cfg.ledger(img.height, img.width)
    criterion = get_criterion(cfg.allocator)
    mat = cfg.matrix()
    grid = partition(img, cfg.block_size)
    capacity = ledger.capacity
    n = grid.num_blocks

    initial = (min(ledger.init_per_block, capacity),) * n
    ms = sample_more(MeasurementSet.empty(n, mat), grid.blocks, mat, initial)
    plan = AllocationPlan(block_size=cfg.block_size, initial=initial)
    traces: list[StageTrace] = []
    carry = 0

    for stage in range(1, ledger.stages + 1):
        before = ms
        innovation_counts = tuple(
            min(ledger.is_per_block, capacity - have) for have in before.counts
        )
        after = sample_more(before, grid.blocks, mat, innovation_counts)
        carry += n * ledger.is_per_block - sum(innovation_counts)

        x_prev = reconstruct(before, mat, img.shape, cfg.ie_solver, cfg.workers)
        x_is = reconstruct(after, mat, img.shape, cfg.ie_solver, cfg.workers)
        ctx = StageContext(stage, grid, mat, before, after, x_prev, x_is)
        scores = criterion.score(ctx)

        cap = ledger.stage_cap(stage)
        budget = ledger.adaptive[stage - 1] + carry
        room = sum(max(cap - have, 0) for have in after.counts)
        spend = min(budget, room)
        carry = budget - spend
        if stage == ledger.stages and carry:
            raise BudgetError(f"{carry} samples could not be placed in the final stage")

        allocation = apportion(
            criterion.allocation_weights(scores),
            spend,
            caps=[cap] * n,
            cumulative=after.counts,
        )
        ms = sample_more(after, grid.blocks, mat, allocation)
        record = plan.add_stage(stage, innovation_counts, allocation, carry, cap)

        traces.append(
            StageTrace(
                stage=stage,
                criterion=criterion.name,
                scores=tuple(float(v) for v in scores.scores),
                innovation_counts=record.innovation_counts,
                allocated=record.adaptive,
                cumulative=record.cumulative,
                cap=cap,
                budget=record.budget,
                carry=carry,
                psnr=psnr(img, x_is),
            )
        )

    final = reconstruct(ms, mat, img.shape, cfg.final_solver, cfg.workers)
    return final, plan, traces


def uniform_counts(num_blocks: int, block_size: int, sr: float) -> tuple[int, ...]:
    """
    Per-block counts of a single-shot uniform run.

    Every block gets round(SR * B^2); the difference to T is spread one
    sample at a time over the lowest-index blocks.
    """
    capacity = block_size * block_size
    total = round_half_up(num_blocks * capacity * sr)
    per_block = min(round_half_up(sr * capacity), capacity)

    counts = [per_block] * num_blocks
    diff = total - per_block * num_blocks
    step = 1 if diff > 0 else -1
    for index in range(abs(diff)):
        counts[index % num_blocks] += step
    return tuple(counts)


def run_uniform(img: Image, cfg: RunConfig) -> tuple[Image, AllocationPlan]:
    """
    Sense every block with the same number of samples and reconstruct.

    Args:
        img (Image): Ground truth being sensed.
        cfg (RunConfig): Only ``sr``, ``block_size``, ``seed``, ``dc_row``,
            ``final_solver`` and ``workers`` are used.

    Returns:
        tuple: The reconstruction and a stage-less allocation plan.
    """
    mat = cfg.matrix()
    grid = partition(img, cfg.block_size)
    counts = uniform_counts(grid.num_blocks, cfg.block_size, cfg.sr)

    ms = sample_more(MeasurementSet.empty(grid.num_blocks, mat), grid.blocks, mat, counts)
    plan = AllocationPlan(block_size=cfg.block_size, initial=counts)
    final = reconstruct(ms, mat, img.shape, cfg.final_solver, cfg.workers)
    return final, plan
