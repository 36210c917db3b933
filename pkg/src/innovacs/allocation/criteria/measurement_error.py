"""measurement_error.py

Scores blocks by how badly the previous estimate predicts their measurements.
"""

from ..scores import ScoreVector, measurement_error_scores
from .criterion import AllocationCriterion, StageContext


class MeasurementErrorCriterion(AllocationCriterion):
    """
    Residual of the pre-IS estimate against the post-IS measurements.

    The innovation rows are new to the estimate, so their prediction error is
    part of the score.
    """

    name = "error"

    def score(self, ctx: StageContext) -> ScoreVector:
        return measurement_error_scores(ctx.after, ctx.mat, ctx.x_prev, ctx.grid)
