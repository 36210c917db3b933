"""
Core raster structures for block-based sensing.

This module defines the ``Image`` and ``BlockGrid`` types shared by every
other package, and the partition/assemble pair that moves between them.
Both types are immutable after construction: their arrays are marked
read-only so they can be shared between workers without copying.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import BlockCountMismatchError, DimensionMismatchError, IntensityRangeError

# Excursions smaller than this are floating-point residue and get clipped.
RANGE_TOLERANCE = 1e-9


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Image:
    """
    A grayscale raster with intensities in [0, 1].

    Attributes:
        data (np.ndarray): H x W float64 array, row-major.
    """

    data: np.ndarray

    def __post_init__(self):
        array = np.array(self.data, dtype=np.float64, copy=True)
        if array.ndim != 2 or array.size == 0:
            raise DimensionMismatchError(("H", "W"), array.shape)
        if not np.all(np.isfinite(array)):
            raise IntensityRangeError(float(np.nanmin(array)), float(np.nanmax(array)))

        low, high = float(array.min()), float(array.max())
        if low < -RANGE_TOLERANCE or high > 1.0 + RANGE_TOLERANCE:
            raise IntensityRangeError(low, high)
        np.clip(array, 0.0, 1.0, out=array)
        object.__setattr__(self, "data", _frozen(array))

    @property
    def height(self) -> int:
        """Return the number of pixel rows (H)."""
        return self.data.shape[0]

    @property
    def width(self) -> int:
        """Return the number of pixel columns (W)."""
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        """Return ``(H, W)``."""
        return self.height, self.width

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __repr__(self) -> str:
        return f"<Image {self.height}x{self.width}>"


@dataclass(frozen=True, eq=False)
class BlockGrid:
    """
    An image cut into B x B tiles.

    Attributes:
        block_size (int): Tile edge length B in pixels.
        rows (int): Number of block rows, ceil(H / B).
        cols (int): Number of block columns, ceil(W / B).
        blocks (tuple[np.ndarray, ...]): Tiles in row-major block order.
        original_dims (tuple[int, int]): ``(H, W)`` before padding.
    """

    block_size: int
    rows: int
    cols: int
    blocks: tuple[np.ndarray, ...]
    original_dims: tuple[int, int]

    @property
    def num_blocks(self) -> int:
        """Return N = rows * cols."""
        return self.rows * self.cols


def grid_shape(height: int, width: int, block_size: int) -> tuple[int, int]:
    """Return ``(ceil(H / B), ceil(W / B))``."""
    return math.ceil(height / block_size), math.ceil(width / block_size)


def partition(img: Image, block_size: int) -> BlockGrid:
    """Cut *img* into B x B tiles, padding by edge replication.

    Args:
        img (Image): Image to partition.
        block_size (int): Tile edge length B (>= 1).

    Returns:
        BlockGrid: Tiles listed row-major.
    """
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")

    rows, cols = grid_shape(img.height, img.width, block_size)
    pad_h = rows * block_size - img.height
    pad_w = cols * block_size - img.width
    padded = np.pad(img.data, ((0, pad_h), (0, pad_w)), mode="edge")

    # (rows, B, cols, B) -> (rows, cols, B, B)
    tiles = padded.reshape(rows, block_size, cols, block_size).swapaxes(1, 2)
    blocks = tuple(
        _frozen(np.ascontiguousarray(tile))
        for tile in tiles.reshape(-1, block_size, block_size)
    )

    return BlockGrid(
        block_size=block_size,
        rows=rows,
        cols=cols,
        blocks=blocks,
        original_dims=img.shape,
    )


def stitch(
    blocks: list[np.ndarray] | tuple[np.ndarray, ...],
    rows: int,
    cols: int,
    dims: tuple[int, int],
) -> np.ndarray:
    """Lay tiles out row-major and crop to *dims*, without range validation.

    Args:
        blocks: Tiles of equal size B x B.
        rows (int): Block rows.
        cols (int): Block columns.
        dims (tuple[int, int]): ``(H, W)`` to crop to.

    Returns:
        np.ndarray: The cropped H x W raster.
    """
    if len(blocks) != rows * cols:
        raise BlockCountMismatchError(rows * cols, len(blocks))

    block_size = blocks[0].shape[0] if blocks else 0
    stacked = np.asarray(blocks, dtype=np.float64).reshape(rows, cols, block_size, block_size)
    raster = stacked.swapaxes(1, 2).reshape(rows * block_size, cols * block_size)
    height, width = dims
    return raster[:height, :width].copy()


def assemble(grid: BlockGrid) -> Image:
    """Inverse of ``partition``: stitch tiles and crop the padding away.

    Args:
        grid (BlockGrid): Grid holding exactly rows * cols tiles.

    Returns:
        Image: The cropped image.

    Raises:
        BlockCountMismatchError: If the grid holds the wrong number of tiles.
    """
    return Image(stitch(grid.blocks, grid.rows, grid.cols, grid.original_dims))


def block_sums(field: np.ndarray, block_size: int) -> np.ndarray:
    """Sum a per-pixel field over each block, counting real pixels only.

    The field is zero-padded up to the block grid, so padded pixels add
    nothing to any block.

    Args:
        field (np.ndarray): H x W array (e.g. squared differences).
        block_size (int): Tile edge length B.

    Returns:
        np.ndarray: Length-N vector of per-block sums in row-major block order.
    """
    height, width = field.shape
    rows, cols = grid_shape(height, width, block_size)
    padded = np.zeros((rows * block_size, cols * block_size), dtype=np.float64)
    padded[:height, :width] = field
    return padded.reshape(rows, block_size, cols, block_size).sum(axis=(1, 3)).reshape(-1)
