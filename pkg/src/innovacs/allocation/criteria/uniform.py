"""uniform.py

Scores every block equally.
"""

from ..scores import ScoreVector, uniform_scores
from .criterion import AllocationCriterion, StageContext


class UniformCriterion(AllocationCriterion):
    """Equal scores: the adaptive budget is split evenly, subject to caps."""

    name = "uniform"

    def score(self, ctx: StageContext) -> ScoreVector:
        return uniform_scores(ctx.grid.num_blocks)
