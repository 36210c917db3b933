"""Criterion comparisons, rate sweeps and feedback analysis.

Every criterion in a comparison runs with the same seed, budget and
solvers, so the only thing that differs between rows is where the samples
went. The ``uniform`` criterion runs as a single-shot uniform sampling.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from ..allocation.criteria import CRITERIA, get_criterion
from ..allocation.plan import AllocationPlan
from ..imaging.image import Image
from ..metrics.quality import quality_report
from .acs import run_acs, run_uniform
from .run_config import RunConfig
from .stage_trace import StageTrace

SUMMARY_COLUMNS = ["image", "criterion", "psnr", "ssim", "total_samples"]
SWEEP_COLUMNS = ["sr", "image", "criterion", "psnr", "ssim", "total_samples"]
FEEDBACK_COLUMNS = ["criterion", "transitions", "negative_feedback_ratio", "concentration"]


@dataclass
class ComparisonRow:
    """
    Outcome of one criterion on one image.

    Attributes:
        criterion (str): Criterion name.
        psnr (float): Final PSNR in dB.
        ssim (float): Final SSIM.
        total_samples (int): Samples spent.
        plan (AllocationPlan): Where the samples went.
        image (Image): The final reconstruction.
        traces (list[StageTrace]): Stage records (empty for uniform).
    """

    criterion: str
    psnr: float
    ssim: float
    total_samples: int
    plan: AllocationPlan
    image: Image
    traces: list[StageTrace] = field(default_factory=list)


def run_criterion(img: Image, cfg: RunConfig, criterion: str) -> ComparisonRow:
    """Run one criterion and score the reconstruction against *img*."""
    get_criterion(criterion)
    if criterion == "uniform":
        recon, plan = run_uniform(img, cfg)
        traces: list[StageTrace] = []
    else:
        recon, plan, traces = run_acs(img, replace(cfg, allocator=criterion))

    report = quality_report(img, recon)
    return ComparisonRow(
        criterion=criterion,
        psnr=report.psnr,
        ssim=report.ssim,
        total_samples=plan.total,
        plan=plan,
        image=recon,
        traces=traces,
    )


def run_comparison(
    img: Image, cfg: RunConfig, criteria: Sequence[str] = CRITERIA
) -> list[ComparisonRow]:
    """
    Run every criterion on one image with an identical seed and budget.

    Args:
        img (Image): Ground truth.
        cfg (RunConfig): Shared settings; ``allocator`` is overridden per row.
        criteria: Criterion names, in output order.

    Returns:
        list[ComparisonRow]: One row per criterion.

    Raises:
        UnknownCriterionError: Before any run starts, if a name is not registered.
    """
    for name in criteria:
        get_criterion(name)
    return [run_criterion(img, cfg, name) for name in criteria]


def comparison_table(results: Mapping[str, list[ComparisonRow]]) -> pd.DataFrame:
    """Flatten ``{image_id: rows}`` into the summary table."""
    records = [
        {
            "image": image_id,
            "criterion": row.criterion,
            "psnr": row.psnr,
            "ssim": row.ssim,
            "total_samples": row.total_samples,
        }
        for image_id, rows in results.items()
        for row in rows
    ]
    return pd.DataFrame.from_records(records, columns=SUMMARY_COLUMNS)


def run_sweep(
    images: Mapping[str, Image],
    cfg: RunConfig,
    rates: Iterable[float],
    criteria: Sequence[str] = ("innovation", "uniform"),
) -> pd.DataFrame:
    """
    Compare criteria over a grid of sampling rates.

    Args:
        images: Ground truths keyed by image id.
        cfg (RunConfig): Shared settings; ``sr`` is overridden per rate.
        rates: Sampling rates to visit.
        criteria: Criterion names.

    Returns:
        pd.DataFrame: One row per (rate, image, criterion).
    """
    records = []
    for sr in rates:
        rate_cfg = replace(cfg, sr=float(sr))
        for image_id, img in images.items():
            for row in run_comparison(img, rate_cfg, criteria):
                records.append(
                    {
                        "sr": float(sr),
                        "image": image_id,
                        "criterion": row.criterion,
                        "psnr": row.psnr,
                        "ssim": row.ssim,
                        "total_samples": row.total_samples,
                    }
                )
    return pd.DataFrame.from_records(records, columns=SWEEP_COLUMNS)


@dataclass(frozen=True)
class FeedbackSummary:
    """
    How a criterion's scores and allocations evolve across stages.

    Attributes:
        criterion (str): Criterion name.
        transitions (int): Number of (image, stage) transitions examined.
        negative_feedback_ratio (float): Fraction of transitions where the
            total score did not increase.
        concentration (float): Mean Pearson correlation between a stage's
            allocation and the per-block totals held before it. Positive
            values mean samples keep flowing to already well-sampled blocks.
            NaN when no stage had a non-constant allocation.
    """

    criterion: str
    transitions: int
    negative_feedback_ratio: float
    concentration: float


def _correlation(a: Sequence[int], b: Sequence[int]) -> float | None:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size < 2 or np.ptp(a) == 0 or np.ptp(b) == 0:
        return None
    return float(np.corrcoef(a, b)[0, 1])


def feedback_report(runs: Mapping[str, Iterable[Sequence[StageTrace]]]) -> list[FeedbackSummary]:
    """
    Summarize negative/positive feedback per criterion.

    Args:
        runs: ``{criterion: [traces of run 1, traces of run 2, ...]}``.

    Returns:
        list[FeedbackSummary]: One summary per criterion, in input order.
    """
    summaries = []
    for criterion, trace_lists in runs.items():
        transitions = 0
        non_increasing = 0
        correlations: list[float] = []

        for traces in trace_lists:
            totals = [trace.total_score for trace in traces]
            for earlier, later in zip(totals, totals[1:]):
                transitions += 1
                non_increasing += later <= earlier
            for trace in traces:
                value = _correlation(trace.allocated, trace.cumulative_before)
                if value is not None:
                    correlations.append(value)

        ratio = non_increasing / transitions if transitions else math.nan
        concentration = float(np.mean(correlations)) if correlations else math.nan
        summaries.append(FeedbackSummary(criterion, transitions, ratio, concentration))
    return summaries


def feedback_table(summaries: Sequence[FeedbackSummary]) -> pd.DataFrame:
    """Return feedback summaries as a table."""
    return pd.DataFrame.from_records(
        [
            {
                "criterion": s.criterion,
                "transitions": s.transitions,
                "negative_feedback_ratio": s.negative_feedback_ratio,
                "concentration": s.concentration,
            }
            for s in summaries
        ],
        columns=FEEDBACK_COLUMNS,
    )
