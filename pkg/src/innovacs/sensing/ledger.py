"""Sampling budget arithmetic for the multi-stage scheme.

The ledger turns sampling rates into integer sample counts: a uniform
initial count per block, a uniform innovation-sampling count per block and
stage, and an adaptive pool per stage. The last stage's pool absorbs every
rounding residue so the grand total is exactly round(N * B^2 * SR).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..exceptions import BudgetError
from ..imaging.image import grid_shape


def round_half_up(value: float) -> int:
    """Round to the nearest integer, halves going up."""
    return int(math.floor(value + 0.5))


def default_innovation_rate(sr: float, sr_init: float, stages: int) -> float:
    """Return SR_IS = (SR - SR_init) / (2S)."""
    return (sr - sr_init) / (2 * stages)


@dataclass(frozen=True)
class BudgetLedger:
    """
    Integer sample budget of one run.

    Attributes:
        sr (float): Total sampling rate SR.
        sr_init (float): Initial uniform rate SR_init.
        sr_is (float): Innovation-sampling rate SR_IS per stage.
        stages (int): Number of adaptive stages S.
        block_size (int): Block edge length B.
        num_blocks (int): N = ceil(H/B) * ceil(W/B).
        init_per_block (int): round(SR_init * B^2).
        is_per_block (int): round(SR_IS * B^2), per block and stage.
        adaptive (tuple[int, ...]): M_ASR,s for s = 1..S.
        total (int): T = round(N * B^2 * SR).
    """

    sr: float
    sr_init: float
    sr_is: float
    stages: int
    block_size: int
    num_blocks: int
    init_per_block: int
    is_per_block: int
    adaptive: tuple[int, ...]
    total: int

    @property
    def capacity(self) -> int:
        """Return B^2."""
        return self.block_size * self.block_size

    def stage_cap(self, stage: int) -> int:
        """Return floor((s / S) * B^2), the cumulative cap after stage *s*."""
        return (stage * self.capacity) // self.stages

    def as_records(self) -> list[tuple[str, str]]:
        """Return the ledger as ordered key/value text records."""
        records = [
            ("sr", repr(self.sr)),
            ("sr_init", repr(self.sr_init)),
            ("sr_is", repr(self.sr_is)),
            ("stages", str(self.stages)),
            ("block_size", str(self.block_size)),
            ("num_blocks", str(self.num_blocks)),
            ("init_per_block", str(self.init_per_block)),
            ("is_per_block", str(self.is_per_block)),
        ]
        records += [(f"adaptive_stage_{s}", str(m)) for s, m in enumerate(self.adaptive, 1)]
        records.append(("total", str(self.total)))
        return records


def make_ledger(
    height: int,
    width: int,
    block_size: int,
    sr: float,
    sr_init: float = 0.02,
    stages: int = 4,
    sr_is: float | None = None,
) -> BudgetLedger:
    """
    Compute the sample budget for an H x W image.

    Args:
        height (int): Image height H.
        width (int): Image width W.
        block_size (int): Block edge length B.
        sr (float): Total sampling rate, 0 < SR <= 1.
        sr_init (float): Initial rate, 0 < SR_init < SR.
        stages (int): Number of adaptive stages S >= 1.
        sr_is (float | None): Innovation-sampling rate; defaults to (SR - SR_init) / (2S).

    Returns:
        BudgetLedger: Counts whose grand total is exactly T.

    Raises:
        BudgetError: If the rates leave no adaptive budget or rounding would
            make the final pool negative.
    """
    if stages < 1:
        raise BudgetError(f"stages must be >= 1, got {stages}")
    if not 0.0 < sr_init < sr <= 1.0:
        raise BudgetError(
            f"rates must satisfy 0 < sr_init < sr <= 1 (sr_init={sr_init}, sr={sr}); "
            "no adaptive budget is left otherwise"
        )

    per_stage_rate = (sr - sr_init) / stages
    if sr_is is None:
        sr_is = default_innovation_rate(sr, sr_init, stages)
    if sr_is < 0 or sr_is >= per_stage_rate:
        raise BudgetError(
            f"sr_is={sr_is} must lie in [0, (sr - sr_init) / S = {per_stage_rate}) "
            "to leave an adaptive budget"
        )

    rows, cols = grid_shape(height, width, block_size)
    num_blocks = rows * cols
    capacity = block_size * block_size
    total = round_half_up(num_blocks * capacity * sr)

    init_per_block = round_half_up(sr_init * capacity)
    is_per_block = round_half_up(sr_is * capacity)
    pool = round_half_up(num_blocks * capacity * (per_stage_rate - sr_is))

    committed = num_blocks * init_per_block + stages * num_blocks * is_per_block
    adaptive = [pool] * (stages - 1)
    last = total - committed - sum(adaptive)

    # Rounding can overdraw the budget at very low rates; earlier pools give back first.
    for index in reversed(range(len(adaptive))):
        if last >= 0:
            break
        refund = min(adaptive[index], -last)
        adaptive[index] -= refund
        last += refund
    if last < 0:
        raise BudgetError(
            f"rounding leaves a negative final adaptive pool ({last}); "
            "raise sr or lower sr_is"
        )
    adaptive.append(last)

    return BudgetLedger(
        sr=sr,
        sr_init=sr_init,
        sr_is=sr_is,
        stages=stages,
        block_size=block_size,
        num_blocks=num_blocks,
        init_per_block=init_per_block,
        is_per_block=is_per_block,
        adaptive=tuple(adaptive),
        total=total,
    )
