"""innovation.py

Scores blocks by how much innovation sampling changed their estimate.
"""

from ..scores import ScoreVector, innovation_scores, uniform_scores
from .criterion import AllocationCriterion, StageContext

# Totals at or below this (per block) are floating-point noise, not innovation.
ZERO_INNOVATION = 1e-20


class InnovationCriterion(AllocationCriterion):
    """
    Squared change between the estimates before and after innovation sampling.

    Blocks whose content is already recovered change little and receive
    few samples; when no block changes at all the stage is split evenly.
    """

    name = "innovation"

    def score(self, ctx: StageContext) -> ScoreVector:
        return innovation_scores(ctx.x_prev, ctx.x_is, ctx.grid)

    def allocation_weights(self, scores: ScoreVector) -> ScoreVector:
        if scores.total <= ZERO_INNOVATION * len(scores):
            return uniform_scores(len(scores))
        return scores
