"""criterion.py

Defines the AllocationCriterion ABC and the StageContext handed to it.
A criterion looks at what the pipeline knows at the start of a stage's
adaptive step (measurements before and after innovation sampling and the
two lightweight reconstructions) and returns one score per block. It never
sees the ground-truth image.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

from ...imaging.image import BlockGrid, Image
from ...sensing.matrix import SensingMatrix
from ...sensing.measurements import MeasurementSet
from ..scores import ScoreVector


@dataclass(frozen=True)
class StageContext:
    """
    Everything a criterion may read at stage s.

    Attributes:
        stage (int): Stage index s (1-based).
        grid (BlockGrid): Block layout (tiles of the padded estimate are not used).
        mat (SensingMatrix): Shared operator.
        before (MeasurementSet): Measurements y_{1:M_{s-1}} before innovation sampling.
        after (MeasurementSet): Measurements after innovation sampling.
        x_prev (Image): Lightweight estimate from *before*.
        x_is (Image): Lightweight estimate from *after*.
    """

    stage: int
    grid: BlockGrid
    mat: SensingMatrix
    before: MeasurementSet
    after: MeasurementSet
    x_prev: Image
    x_is: Image


class AllocationCriterion(ABC):
    """
    Abstract base class for adaptive-sampling criteria.

    Subclasses set ``name`` to their registry key and implement ``score``.
    """

    name: str = ""

    @abstractmethod
    def score(self, ctx: StageContext) -> ScoreVector:
        """
        Score every block for the stage described by *ctx*.

        Args:
            ctx (StageContext): Measurements and estimates of the stage.

        Returns:
            ScoreVector: One nonnegative score per block.
        """
        pass

    def allocation_weights(self, scores: ScoreVector) -> ScoreVector:
        """
        Turn the recorded scores into the weights the budget is split by.

        The default uses the scores unchanged.
        """
        return scores
