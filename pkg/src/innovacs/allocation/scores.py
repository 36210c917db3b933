"""Per-block allocation scores.

Every criterion reduces an image (or a pair of images, or measurements) to
one nonnegative number per block; ``apportion`` then turns those numbers
into integer sample counts. Sums over a block only count real pixels, so
edge-replicated padding never sways an allocation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import DimensionMismatchError
from ..imaging.image import BlockGrid, Image, block_sums, partition
from ..sensing.matrix import SensingMatrix
from ..sensing.measurements import MeasurementSet
from ..solver.proximal import residual


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """
    Nonnegative per-block scores tagged with the criterion that produced them.

    Attributes:
        scores (np.ndarray): Length-N vector, every entry >= 0.
        criterion (str): Registered criterion name.
    """

    scores: np.ndarray
    criterion: str

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64, copy=True).reshape(-1)
        if scores.size == 0:
            raise ValueError("ScoreVector needs at least one block")
        if np.any(np.isnan(scores)) or np.any(scores < 0):
            raise ValueError(f"scores must be nonnegative, got {scores}")
        if not np.any(np.isfinite(scores)):
            raise ValueError("at least one score must be finite")
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return self.scores.size

    @property
    def total(self) -> float:
        """Return the sum of all scores."""
        return float(self.scores.sum())


def _check_grid(img: Image, grid: BlockGrid) -> None:
    if img.shape != grid.original_dims:
        raise DimensionMismatchError(grid.original_dims, img.shape)


def innovation_scores(x_prev: Image, x_is: Image, grid: BlockGrid) -> ScoreVector:
    """
    Squared L2 change of each block between two reconstructions.

    Args:
        x_prev (Image): Estimate from the measurements before innovation sampling.
        x_is (Image): Estimate after innovation sampling.
        grid (BlockGrid): Block layout of the image.

    Returns:
        ScoreVector: alpha_n = sum over block n of (x_is - x_prev)^2.
    """
    if x_prev.shape != x_is.shape:
        raise DimensionMismatchError(x_prev.shape, x_is.shape)
    _check_grid(x_prev, grid)
    difference = (x_is.data - x_prev.data) ** 2
    return ScoreVector(block_sums(difference, grid.block_size), "innovation")


def measurement_error_scores(
    ms: MeasurementSet, mat: SensingMatrix, x_hat: Image, grid: BlockGrid
) -> ScoreVector:
    """
    Squared residual between each block's measurements and its re-measured estimate.

    Returns:
        ScoreVector: score_n = ||y_n - A_{1:M_n} vec(block_n of x_hat)||^2;
            blocks without measurements score 0.
    """
    _check_grid(x_hat, grid)
    estimate = partition(x_hat, grid.block_size)
    if estimate.num_blocks != ms.num_blocks:
        raise DimensionMismatchError((ms.num_blocks,), (estimate.num_blocks,))

    scores = np.zeros(ms.num_blocks)
    for index, (values, tile) in enumerate(zip(ms.values, estimate.blocks)):
        if values.size:
            scores[index] = float(np.sum(residual(tile, values, mat) ** 2))
    return ScoreVector(scores, "error")


def laplacian(field: np.ndarray) -> np.ndarray:
    """Return the 5-point discrete Laplacian with edge replication."""
    padded = np.pad(field, 1, mode="edge")
    return (
        padded[:-2, 1:-1]
        + padded[2:, 1:-1]
        + padded[1:-1, :-2]
        + padded[1:-1, 2:]
        - 4.0 * padded[1:-1, 1:-1]
    )


def saliency_scores(x_hat: Image, grid: BlockGrid) -> ScoreVector:
    """
    High-frequency energy of each block of an estimate.

    Returns:
        ScoreVector: score_n = sum over block n of (Laplacian of x_hat)^2.
    """
    _check_grid(x_hat, grid)
    energy = laplacian(x_hat.data) ** 2
    return ScoreVector(block_sums(energy, grid.block_size), "saliency")


def uniform_scores(num_blocks: int) -> ScoreVector:
    """Return equal scores for every block."""
    return ScoreVector(np.ones(num_blocks), "uniform")
