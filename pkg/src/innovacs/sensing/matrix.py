"""Nested row-orthonormal sensing operators.

A single B^2 x B^2 matrix serves every block and every sample count: the
operator for M samples is simply its first M rows. Because rows are
orthonormalized strictly in order, a prefix never changes when more rows
are requested, which is what lets a block's measurement vector grow by
concatenation across stages.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..exceptions import LengthMismatchError, MatrixConstructionError, MeasurementRangeError

MAX_BLOCK_SIZE = 64
MAX_REDRAWS = 8

# A row whose residual keeps less than this fraction of its norm is dependent.
_DEPENDENCE_RATIO = 1e-8


@dataclass(frozen=True, eq=False)
class SensingMatrix:
    """
    Deterministic row-orthonormal matrix shared by all blocks.

    Attributes:
        block_size (int): Block edge length B.
        rows (np.ndarray): B^2 x B^2 array whose rows are orthonormal.
        seed (int): PCG64 seed the rows were drawn from.
        dc_row (bool): Whether row 1 is the constant (DC) atom.
    """

    block_size: int
    rows: np.ndarray
    seed: int
    dc_row: bool = True

    @property
    def dimension(self) -> int:
        """Return B^2, the number of pixels (and rows) per block."""
        return self.block_size * self.block_size

    def prefix(self, count: int) -> np.ndarray:
        """Return the operator A_{1:count} (a read-only view)."""
        return self.rows[:count]

    def transform(self, block: np.ndarray) -> np.ndarray:
        """Return all B^2 coefficients <row_i, vec(block)>."""
        return self.rows @ np.asarray(block, dtype=np.float64).reshape(-1)


def _orthogonalize(vector: np.ndarray, basis: np.ndarray) -> np.ndarray:
    # Gram-Schmidt against the accepted rows, applied twice for stability.
    for _ in range(2):
        vector = vector - basis.T @ (basis @ vector)
    return vector


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@lru_cache(maxsize=8)
def _build_rows(seed: int, block_size: int, dc_row: bool) -> np.ndarray:
    n = block_size * block_size
    rng = _generator(seed)

    # Stream order: all n*n entries drawn row-major up front; redraws follow.
    draws = rng.standard_normal((n, n))
    if dc_row:
        draws[0] = 1.0

    rows = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        candidate = draws[i]
        for attempt in range(MAX_REDRAWS + 1):
            residual = _orthogonalize(candidate, rows[:i])
            norm = np.linalg.norm(residual)
            if norm > _DEPENDENCE_RATIO * np.linalg.norm(candidate):
                rows[i] = residual / norm
                break
            if attempt == MAX_REDRAWS:
                raise MatrixConstructionError(i + 1, MAX_REDRAWS)
            candidate = rng.standard_normal(n)

    rows.flags.writeable = False
    return rows


def build_matrix(seed: int, block_size: int, dc_row: bool = True) -> SensingMatrix:
    """
    Build the nested sensing matrix for one block size.

    Entries are drawn i.i.d. standard normal from a PCG64 stream in row-major
    order, then orthonormalized row by row. With ``dc_row`` the first drawn
    row is replaced by the constant vector before orthonormalization, so every
    block's mean is captured by its first sample. With ``dc_row=False`` the
    rows are exactly the orthonormalized i.i.d. Gaussian draws.

    Args:
        seed (int): 64-bit generator seed.
        block_size (int): Block edge length B (1 <= B <= 64).
        dc_row (bool): Put the normalized DC atom first.

    Returns:
        SensingMatrix: The B^2 x B^2 row-orthonormal matrix.

    Raises:
        ValueError: If B is out of the supported range.
        MatrixConstructionError: If a row stays dependent after 8 redraws.
    """
    if not 1 <= block_size <= MAX_BLOCK_SIZE:
        raise ValueError(f"block_size must be in [1, {MAX_BLOCK_SIZE}], got {block_size}")
    rows = _build_rows(int(seed) & 0xFFFFFFFFFFFFFFFF, block_size, bool(dc_row))
    return SensingMatrix(block_size=block_size, rows=rows, seed=int(seed), dc_row=bool(dc_row))


def measure(block: np.ndarray, mat: SensingMatrix, start: int, stop: int) -> np.ndarray:
    """
    Measure a block with rows ``start..stop`` (1-based, inclusive).

    The full orthonormal transform is computed and sliced, so values for a
    given row are bit-identical whatever range they are requested in.

    Args:
        block (np.ndarray): B x B tile.
        mat (SensingMatrix): Shared operator.
        start (int): First row, 1-based.
        stop (int): Last row, 1-based, inclusive.

    Returns:
        np.ndarray: ``stop - start + 1`` measurement values.

    Raises:
        MeasurementRangeError: If the interval is outside [1, B^2] or empty.
    """
    if not 1 <= start <= stop <= mat.dimension:
        raise MeasurementRangeError(start, stop, mat.dimension)
    return mat.transform(block)[start - 1 : stop]


def adjoint(values: np.ndarray, mat: SensingMatrix, count: int) -> np.ndarray:
    """
    Back-project measurements: x0 = A_{1:count}^T y, reshaped B x B.

    With orthonormal rows this is the orthogonal projection of the true
    block onto the span of the first *count* rows.

    Raises:
        LengthMismatchError: If ``len(values) != count``.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (count,):
        raise LengthMismatchError(count, values.size)
    b = mat.block_size
    return (mat.prefix(count).T @ values).reshape(b, b)
