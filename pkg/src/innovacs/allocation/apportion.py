"""Integer apportionment of a sample budget.

Quotas q_n = budget * score_n / sum(score) are integerized by the largest
remainder rule: every block gets floor(q_n), and the leftover units go to
the largest fractional parts, ties to the lowest block index. Blocks whose
count would exceed their remaining capacity are pinned at that capacity
and the rest of the budget is apportioned again among the others, until no
block overflows.

Quotas and remainders are exact rationals, so the result never depends on
the order of floating-point operations.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from ..exceptions import CapacityExceededError
from .scores import ScoreVector


def _weights(scores: Sequence[float], members: list[int]) -> list[Fraction]:
    values = [float(scores[i]) for i in members]
    if any(np.isinf(v) for v in values):
        # Infinite scores dominate; they share the budget evenly.
        return [Fraction(1) if np.isinf(v) else Fraction(0) for v in values]
    weights = [Fraction(v) for v in values]
    if sum(weights) == 0:
        return [Fraction(1)] * len(members)
    return weights


def largest_remainder(weights: Sequence[Fraction], budget: int) -> list[int]:
    """
    Split *budget* proportionally to *weights* by the largest remainder rule.

    Args:
        weights: Nonnegative weights with a positive sum.
        budget (int): Units to distribute.

    Returns:
        list[int]: Counts summing to *budget*.
    """
    total = sum(weights)
    quotas = [Fraction(budget) * w / total for w in weights]
    counts = [q.numerator // q.denominator for q in quotas]

    leftover = budget - sum(counts)
    order = sorted(range(len(quotas)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def apportion(
    scores: ScoreVector | Sequence[float],
    budget: int,
    caps: Sequence[float] | None = None,
    cumulative: Sequence[int] | None = None,
) -> tuple[int, ...]:
    """
    Distribute a stage budget over blocks in proportion to their scores.

    Args:
        scores: Per-block nonnegative scores.
        budget (int): Samples to hand out (>= 0).
        caps: Per-block capacity; ``None`` or ``inf`` entries are unbounded.
            When *cumulative* is given, caps are absolute and the remaining
            capacity is ``caps[n] - cumulative[n]``.
        cumulative: Samples each block already holds.

    Returns:
        tuple[int, ...]: Counts that sum to *budget* and respect every cap.
            Zero-score blocks get nothing unless every uncapped score is zero,
            in which case the uncapped blocks share evenly.

    Raises:
        CapacityExceededError: If *budget* exceeds the total remaining capacity.
        ValueError: On negative budgets or mismatched lengths.
    """
    values = scores.scores if isinstance(scores, ScoreVector) else np.asarray(scores, float)
    n = len(values)
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    if np.any(np.isnan(values)) or np.any(values < 0):
        raise ValueError("scores must be nonnegative")

    if caps is None:
        caps = [None] * n
    if cumulative is None:
        cumulative = [0] * n
    if len(caps) != n or len(cumulative) != n:
        raise ValueError(f"caps/cumulative must have {n} entries")

    remaining: list[int | None] = []
    for cap, have in zip(caps, cumulative):
        if cap is None or np.isinf(cap):
            remaining.append(None)
        else:
            remaining.append(max(int(cap) - int(have), 0))

    if None not in remaining and budget > sum(remaining):
        raise CapacityExceededError(budget, sum(remaining), where="stage")

    counts = [0] * n
    free = [i for i in range(n) if remaining[i] is None or remaining[i] > 0]
    left = budget

    while left > 0:
        trial = largest_remainder(_weights(values, free), left)
        overflow = [
            i
            for i, amount in zip(free, trial)
            if remaining[i] is not None and amount > remaining[i]
        ]
        if not overflow:
            for i, amount in zip(free, trial):
                counts[i] = amount
            break
        for i in overflow:
            counts[i] = remaining[i]
            left -= remaining[i]
        free = [i for i in free if i not in overflow]

    return tuple(counts)
