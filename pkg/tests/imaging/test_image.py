"""
Tests for the Image/BlockGrid types and the partition/assemble pair.
"""

import numpy as np
import pytest

from innovacs.exceptions import (
    BlockCountMismatchError,
    DimensionMismatchError,
    IntensityRangeError,
)
from innovacs.imaging.image import (
    BlockGrid,
    Image,
    assemble,
    block_sums,
    grid_shape,
    partition,
)


# ===== Helpers =====


def random_image(height, width, seed=0):
    return Image(np.random.default_rng(seed).random((height, width)))


# ===== Image =====


def test_image_copies_and_freezes_data():
    """The image owns a read-only float64 copy of its input."""
    raw = np.full((2, 3), 0.5, dtype=np.float32)
    img = Image(raw)

    raw[0, 0] = 0.0
    assert img.data[0, 0] == 0.5
    assert img.data.dtype == np.float64
    assert img.shape == (2, 3)
    with pytest.raises(ValueError):
        img.data[0, 0] = 1.0


def test_image_rejects_out_of_range_values():
    with pytest.raises(IntensityRangeError) as info:
        Image(np.array([[0.0, 1.5]]))
    assert info.value.high == 1.5


def test_image_rejects_non_finite_values():
    with pytest.raises(IntensityRangeError):
        Image(np.array([[0.0, np.nan]]))


def test_image_clips_sub_tolerance_excursions():
    img = Image(np.array([[-1e-12, 1.0 + 1e-12]]))
    assert img.data.tolist() == [[0.0, 1.0]]


def test_image_requires_two_dimensions():
    with pytest.raises(DimensionMismatchError):
        Image(np.zeros(4))
    with pytest.raises(DimensionMismatchError):
        Image(np.zeros((0, 3)))


def test_image_equality_is_value_based():
    assert Image(np.zeros((2, 2))) == Image(np.zeros((2, 2)))
    assert Image(np.zeros((2, 2))) != Image(np.ones((2, 2)))


# ===== partition =====


def test_partition_64_by_64_into_four_blocks():
    grid = partition(random_image(64, 64), 32)

    assert (grid.rows, grid.cols) == (2, 2)
    assert grid.num_blocks == 4
    assert all(block.shape == (32, 32) for block in grid.blocks)


def test_partition_orders_blocks_row_major():
    data = np.zeros((4, 4))
    data[:2, 2:] = 0.25
    data[2:, :2] = 0.5
    data[2:, 2:] = 0.75
    grid = partition(Image(data), 2)

    assert [float(block[0, 0]) for block in grid.blocks] == [0.0, 0.25, 0.5, 0.75]


def test_partition_pads_by_edge_replication():
    """A 33x33 image needs a 2x2 grid; padding repeats the last row/column."""
    img = random_image(33, 33, seed=3)
    grid = partition(img, 32)

    assert grid.num_blocks == 4
    # block 1 holds real column 32 followed by 31 replicated copies
    for k in range(32):
        np.testing.assert_array_equal(grid.blocks[1][:, k], img.data[:32, 32])
    # block 3 holds the single real pixel (32, 32) everywhere
    assert np.all(grid.blocks[3] == img.data[32, 32])


def test_partition_of_constant_image_gives_constant_blocks():
    grid = partition(Image(np.full((50, 70), 0.3)), 16)
    assert all(np.all(block == 0.3) for block in grid.blocks)


def test_partition_rejects_non_positive_block_size():
    with pytest.raises(ValueError):
        partition(random_image(4, 4), 0)


def test_grid_shape_uses_ceiling():
    assert grid_shape(33, 33, 32) == (2, 2)
    assert grid_shape(96, 96, 32) == (3, 3)
    assert grid_shape(1, 1, 8) == (1, 1)


# ===== assemble =====


@pytest.mark.parametrize("block_size", [8, 16, 32])
@pytest.mark.parametrize("dims", [(96, 96), (50, 70), (1, 1), (33, 17), (7, 64)])
def test_assemble_inverts_partition_exactly(dims, block_size):
    img = random_image(*dims, seed=dims[0] * 1000 + dims[1])
    restored = assemble(partition(img, block_size))

    assert restored == img


def test_assemble_rejects_wrong_block_count():
    grid = partition(random_image(64, 64), 32)
    broken = BlockGrid(
        block_size=grid.block_size,
        rows=grid.rows,
        cols=grid.cols,
        blocks=grid.blocks[:-1],
        original_dims=grid.original_dims,
    )

    with pytest.raises(BlockCountMismatchError) as info:
        assemble(broken)
    assert (info.value.expected, info.value.actual) == (4, 3)


# ===== block_sums =====


def test_block_sums_count_real_pixels_only():
    sums = block_sums(np.ones((33, 33)), 32)
    assert sums.tolist() == [1024.0, 32.0, 32.0, 1.0]


def test_block_sums_row_major():
    field = np.zeros((4, 4))
    field[0, 3] = 2.0
    field[3, 0] = 5.0
    assert block_sums(field, 2).tolist() == [0.0, 2.0, 5.0, 0.0]
