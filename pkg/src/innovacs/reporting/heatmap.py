"""Allocation heatmaps: sample counts laid out on the block grid.

Each heatmap is written twice: as CSV (one line per block-grid row,
comma-separated integer counts) and as a PGM picture where every block
becomes a square cell whose brightness is its count over the capacity B^2.
"""

import os
from collections.abc import Sequence

import numpy as np

from ..exceptions import BlockCountMismatchError
from ..imaging.image import Image
from ..imaging.pgm import save_pgm

CELL_SIZE = 8


def heatmap_grid(counts: Sequence[int], rows: int, cols: int) -> np.ndarray:
    """Arrange per-block counts (row-major) as a rows x cols integer array."""
    if len(counts) != rows * cols:
        raise BlockCountMismatchError(rows * cols, len(counts))
    return np.asarray(counts, dtype=np.int64).reshape(rows, cols)


def write_heatmap_csv(grid: np.ndarray, path: str | os.PathLike) -> None:
    """Write the grid as comma-separated integers, one line per block row."""
    lines = [",".join(str(int(v)) for v in row) for row in grid]
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def read_heatmap_csv(path: str | os.PathLike) -> np.ndarray:
    """Read a heatmap CSV back into an integer array."""
    return np.loadtxt(path, delimiter=",", dtype=np.int64, ndmin=2)


def heatmap_image(grid: np.ndarray, capacity: int, cell_size: int = CELL_SIZE) -> Image:
    """Render the grid as an image with one bright-to-capacity cell per block."""
    fractions = np.clip(grid / float(capacity), 0.0, 1.0)
    return Image(np.kron(fractions, np.ones((cell_size, cell_size))))


def write_heatmap_pgm(
    grid: np.ndarray, capacity: int, path: str | os.PathLike, cell_size: int = CELL_SIZE
) -> None:
    """Save the rendered heatmap as a binary PGM."""
    save_pgm(heatmap_image(grid, capacity, cell_size), path)
