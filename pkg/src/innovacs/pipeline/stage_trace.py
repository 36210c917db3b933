"""Per-stage records of a multi-stage run."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class StageTrace:
    """
    What happened to every block in one adaptive stage.

    Attributes:
        stage (int): Stage index s (1-based).
        criterion (str): Criterion that produced ``scores``.
        scores (tuple[float, ...]): Per-block score (alpha_{n,s} for innovation).
        innovation_counts (tuple[int, ...]): Innovation samples per block.
        allocated (tuple[int, ...]): Adaptive samples M_{n,s} per block.
        cumulative (tuple[int, ...]): Per-block totals after the stage.
        cap (int): Per-block cap in force after the stage.
        budget (int): Adaptive samples spent in the stage.
        carry (int): Budget passed on to the next stage.
        psnr (float): PSNR of the post-IS estimate against the ground truth.
            Recorded for analysis only; allocation never reads it.
    """

    stage: int
    criterion: str
    scores: tuple[float, ...]
    innovation_counts: tuple[int, ...]
    allocated: tuple[int, ...]
    cumulative: tuple[int, ...]
    cap: int
    budget: int
    carry: int
    psnr: float

    @property
    def total_score(self) -> float:
        """Return the sum of the per-block scores."""
        return float(sum(self.scores))

    @property
    def cumulative_before(self) -> tuple[int, ...]:
        """Return the per-block totals at the start of the stage."""
        counts = zip(self.cumulative, self.innovation_counts, self.allocated)
        return tuple(c - p - a for c, p, a in counts)
