import numpy as np
import pytest

from innovacs.exceptions import BlockCountMismatchError
from innovacs.imaging.pgm import load_pgm
from innovacs.reporting.heatmap import (
    CELL_SIZE,
    heatmap_grid,
    heatmap_image,
    read_heatmap_csv,
    write_heatmap_csv,
    write_heatmap_pgm,
)


def test_heatmap_grid_is_row_major():
    grid = heatmap_grid([1, 2, 3, 4, 5, 6], 2, 3)
    assert grid.tolist() == [[1, 2, 3], [4, 5, 6]]


def test_heatmap_grid_rejects_wrong_count():
    with pytest.raises(BlockCountMismatchError):
        heatmap_grid([1, 2, 3], 2, 2)


def test_csv_layout_and_read_back(tmp_path):
    path = tmp_path / "heatmap_final.csv"
    grid = heatmap_grid([256, 40, 0, 1024], 2, 2)

    write_heatmap_csv(grid, path)

    assert path.read_text(encoding="utf-8") == "256,40\n0,1024\n"
    np.testing.assert_array_equal(read_heatmap_csv(path), grid)


def test_single_row_csv_reads_back_two_dimensional(tmp_path):
    path = tmp_path / "heatmap.csv"
    write_heatmap_csv(heatmap_grid([5, 6, 7], 1, 3), path)
    assert read_heatmap_csv(path).shape == (1, 3)


def test_heatmap_image_scales_by_capacity():
    img = heatmap_image(np.array([[0, 512], [1024, 256]]), capacity=1024)

    assert img.shape == (2 * CELL_SIZE, 2 * CELL_SIZE)
    assert img.data[0, 0] == 0.0
    assert img.data[0, CELL_SIZE] == 0.5
    assert img.data[CELL_SIZE, 0] == 1.0
    assert img.data[-1, -1] == 0.25


def test_heatmap_pgm_round_trips_through_loader(tmp_path):
    path = tmp_path / "heatmap.pgm"
    write_heatmap_pgm(np.array([[0, 1024]]), 1024, path, cell_size=2)

    img = load_pgm(path)
    assert img.shape == (2, 4)
    assert img.data[:, :2].max() == 0.0
    assert img.data[:, 2:].min() == 1.0
