from .criterion import AllocationCriterion, StageContext
from .registry import CRITERIA, CRITERION_MAP, get_criterion

__all__ = ["CRITERIA", "CRITERION_MAP", "AllocationCriterion", "StageContext", "get_criterion"]
