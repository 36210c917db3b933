from .apportion import apportion
from .criteria import CRITERIA, AllocationCriterion, StageContext, get_criterion
from .plan import AllocationPlan, StageAllocation
from .scores import (
    ScoreVector,
    innovation_scores,
    measurement_error_scores,
    saliency_scores,
    uniform_scores,
)

__all__ = [
    "CRITERIA",
    "AllocationCriterion",
    "AllocationPlan",
    "ScoreVector",
    "StageAllocation",
    "StageContext",
    "apportion",
    "get_criterion",
    "innovation_scores",
    "measurement_error_scores",
    "saliency_scores",
    "uniform_scores",
]
