"""Block-wise proximal-gradient reconstruction.

Each block is solved independently from its own measurements:

    x0 = A^T y
    x_k = prox_dct(z_{k-1} - A^T (A z_{k-1} - y), lambda_k),   k = 1..K
    x  = clip(x_K, 0, 1)                (optional)

with z_{k-1} = x_{k-1} for plain proximal gradient, or the FISTA
extrapolation x_{k-1} + ((t_{k-1} - 1) / t_k) (x_{k-1} - x_{k-2}) when
accelerated. The tiles are stitched back and cropped. A block measured
B^2 times skips the loop and returns x0 = A^T y, which is exact. An
opt-in data-consistency step x_K - A^T (A x_K - y) can run before the
clip. The same routine serves as the innovation estimator used between
stages and as the final reconstructor.
"""

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigValueError, DimensionMismatchError
from ..imaging.image import Image, grid_shape, stitch
from ..sensing.matrix import SensingMatrix, adjoint
from ..sensing.measurements import MeasurementSet
from .proximal import gradient_step, objective, prox_dct

IterationCallback = Callable[[int, np.ndarray, float], None]


@dataclass(frozen=True)
class SolverConfig:
    """
    Settings of one proximal-gradient solve.

    Attributes:
        iterations (int): Number of PGD iterations K (>= 1).
        lambda_start (float): Threshold of the first iteration (intensity units).
        lambda_end (float): Threshold of the last iteration.
        geometric (bool): Geometric decay between the two thresholds
            (linear interpolation when False).
        clamp (bool): Clip each reconstructed block to [0, 1].
        accelerated (bool): Take each gradient step from a FISTA
            extrapolation of the last two iterates instead of the last one.
        data_consistency (bool): Finish with one extra gradient step so the
            estimate reproduces its measurements (off by default).
    """

    iterations: int = 24
    lambda_start: float = 0.1
    lambda_end: float = 0.001
    geometric: bool = True
    clamp: bool = True
    accelerated: bool = False
    data_consistency: bool = False

    def __post_init__(self):
        if self.iterations < 1:
            raise ConfigValueError("iterations", self.iterations, "must be >= 1")
        if not self.lambda_start >= self.lambda_end >= 0:
            raise ConfigValueError(
                "lambda_start/lambda_end",
                (self.lambda_start, self.lambda_end),
                "need lambda_start >= lambda_end >= 0",
            )
        if self.geometric and self.lambda_end == 0 and self.lambda_start > 0:
            raise ConfigValueError("lambda_end", self.lambda_end, "geometric decay needs > 0")

    def thresholds(self) -> np.ndarray:
        """Return lambda_1..lambda_K."""
        if self.iterations == 1 or self.lambda_start == self.lambda_end:
            return np.full(self.iterations, float(self.lambda_start))
        if self.geometric:
            return np.geomspace(self.lambda_start, self.lambda_end, self.iterations)
        return np.linspace(self.lambda_start, self.lambda_end, self.iterations)


def solve_block(
    values: np.ndarray,
    mat: SensingMatrix,
    cfg: SolverConfig,
    callback: IterationCallback | None = None,
) -> np.ndarray:
    """
    Reconstruct one block from its measurements.

    Args:
        values (np.ndarray): y_n (length M_n, possibly 0).
        mat (SensingMatrix): Shared operator.
        cfg (SolverConfig): Iteration settings.
        callback: Optional ``(k, x_k, lambda_k)`` hook called after every
            iteration, before data consistency and clamping. Fully measured
            blocks run no iterations.

    Returns:
        np.ndarray: The B x B estimate. A block with no measurements comes
            back all zero.
    """
    values = np.asarray(values, dtype=np.float64)
    x = adjoint(values, mat, values.size)

    # A square orthonormal A pins the block down; A^T y is already exact.
    if values.size < mat.dimension:
        point, previous, momentum = x, x, 1.0
        for k, threshold in enumerate(cfg.thresholds(), 1):
            x = prox_dct(gradient_step(point, values, mat), float(threshold))
            if cfg.accelerated:
                following = (1.0 + np.sqrt(1.0 + 4.0 * momentum * momentum)) / 2.0
                point = x + ((momentum - 1.0) / following) * (x - previous)
                previous, momentum = x, following
            else:
                point = x
            if callback is not None:
                callback(k, x, float(threshold))

    if cfg.data_consistency:
        x = gradient_step(x, values, mat)
    if cfg.clamp:
        x = np.clip(x, 0.0, 1.0)
    return x


def reconstruct_blocks(
    ms: MeasurementSet, mat: SensingMatrix, cfg: SolverConfig, workers: int = 1
) -> list[np.ndarray]:
    """Solve every block of *ms*; blocks are independent and order-preserving.

    With ``workers > 1`` the blocks are solved on a thread pool; results are
    identical to the sequential order.
    """
    if ms.block_size != mat.block_size:
        raise DimensionMismatchError((mat.block_size,), (ms.block_size,))
    if workers <= 1:
        return [solve_block(values, mat, cfg) for values in ms.values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda values: solve_block(values, mat, cfg), ms.values))


def reconstruct(
    ms: MeasurementSet,
    mat: SensingMatrix,
    dims: tuple[int, int],
    cfg: SolverConfig,
    workers: int = 1,
) -> Image:
    """
    Reconstruct a full image from per-block measurements.

    Args:
        ms (MeasurementSet): Measurements of every block.
        mat (SensingMatrix): Shared operator.
        dims (tuple[int, int]): Original ``(H, W)``; padding is cropped.
        cfg (SolverConfig): Iteration settings.
        workers (int): Threads used for the per-block solves.

    Returns:
        Image: The assembled estimate.

    Raises:
        ConfigValueError: If *cfg* does not clamp; unclamped tiles are only
            available as raw arrays from ``reconstruct_blocks``.
        DimensionMismatchError: If the block count does not fit *dims*.
    """
    if not cfg.clamp:
        raise ConfigValueError(
            "clamp", cfg.clamp, "reconstruct builds an Image; use reconstruct_blocks"
        )
    rows, cols = grid_shape(dims[0], dims[1], mat.block_size)
    if rows * cols != ms.num_blocks:
        raise DimensionMismatchError((rows * cols,), (ms.num_blocks,))
    tiles = reconstruct_blocks(ms, mat, cfg, workers)
    return Image(stitch(tiles, rows, cols, dims))


def objective_history(values: np.ndarray, mat: SensingMatrix, cfg: SolverConfig) -> list[float]:
    """Return the composite objective after each iteration of ``solve_block``.

    Each entry is evaluated with that iteration's threshold.
    """
    values = np.asarray(values, dtype=np.float64)
    history: list[float] = []

    def record(k: int, x: np.ndarray, threshold: float) -> None:
        history.append(objective(x, values, mat, threshold))

    solve_block(values, mat, cfg, callback=record)
    return history
