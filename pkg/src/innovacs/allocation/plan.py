"""Record of where every sample of a run went."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class StageAllocation:
    """
    Sample counts committed during one adaptive stage.

    Attributes:
        stage (int): Stage index s (1-based).
        innovation_counts (tuple[int, ...]): Innovation samples per block.
        adaptive (tuple[int, ...]): Adaptive samples M_{n,s} per block.
        budget (int): Adaptive budget actually spent (M_ASR,s plus carry).
        carry (int): Budget that did not fit under this stage's cap and
            moved on to the next stage.
        cap (int): Cumulative per-block cap in force after this stage.
        cumulative (tuple[int, ...]): Per-block totals after this stage.
    """

    stage: int
    innovation_counts: tuple[int, ...]
    adaptive: tuple[int, ...]
    budget: int
    carry: int
    cap: int
    cumulative: tuple[int, ...]


@dataclass
class AllocationPlan:
    """
    Per-block, per-stage integer sample counts of one run.

    A uniform run has only ``initial``; a multi-stage run appends one
    ``StageAllocation`` per stage through ``add_stage``.

    Attributes:
        block_size (int): Block edge length B.
        initial (tuple[int, ...]): Counts of the first uniform sampling.
        stages (list[StageAllocation]): Stage records in order.
    """

    block_size: int
    initial: tuple[int, ...]
    stages: list[StageAllocation] = field(default_factory=list)

    @property
    def num_blocks(self) -> int:
        return len(self.initial)

    @property
    def final(self) -> tuple[int, ...]:
        """Return the per-block totals after the last stage."""
        if self.stages:
            return self.stages[-1].cumulative
        return self.initial

    @property
    def total(self) -> int:
        """Return the total number of samples spent."""
        return sum(self.final)

    def cumulative_before(self, stage: int) -> tuple[int, ...]:
        """Return the per-block totals held when stage *stage* begins."""
        if stage <= 1:
            return self.initial
        return self.stages[stage - 2].cumulative

    def add_stage(
        self,
        stage: int,
        innovation_counts: tuple[int, ...],
        adaptive: tuple[int, ...],
        carry: int,
        cap: int,
    ) -> StageAllocation:
        """Append a stage and return its record; cumulative counts are derived."""
        before = self.cumulative_before(stage)
        cumulative = tuple(b + p + a for b, p, a in zip(before, innovation_counts, adaptive))
        record = StageAllocation(
            stage=stage,
            innovation_counts=tuple(innovation_counts),
            adaptive=tuple(adaptive),
            budget=sum(adaptive),
            carry=carry,
            cap=cap,
            cumulative=cumulative,
        )
        self.stages.append(record)
        return record
