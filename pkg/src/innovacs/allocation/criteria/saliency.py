"""saliency.py

Scores blocks by the high-frequency energy of the current estimate.
"""

from ..scores import ScoreVector, saliency_scores
from .criterion import AllocationCriterion, StageContext


class SaliencyCriterion(AllocationCriterion):
    """Laplacian energy of the post-IS estimate, summed per block."""

    name = "saliency"

    def score(self, ctx: StageContext) -> ScoreVector:
        return saliency_scores(ctx.x_is, ctx.grid)
