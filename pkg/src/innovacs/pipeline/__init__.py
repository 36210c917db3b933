from .acs import run_acs, run_uniform, uniform_counts
from .comparison import (
    ComparisonRow,
    FeedbackSummary,
    comparison_table,
    feedback_report,
    feedback_table,
    run_comparison,
    run_sweep,
)
from .run_config import RunConfig
from .stage_trace import StageTrace

__all__ = [
    "ComparisonRow",
    "FeedbackSummary",
    "RunConfig",
    "StageTrace",
    "comparison_table",
    "feedback_report",
    "feedback_table",
    "run_acs",
    "run_comparison",
    "run_sweep",
    "run_uniform",
    "uniform_counts",
]
