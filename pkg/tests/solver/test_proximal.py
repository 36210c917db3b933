"""
Tests for the gradient step, the DCT proximal map and the composite objective.
"""

import numpy as np
import pytest
from scipy.fft import dctn, idctn

from innovacs.sensing.matrix import adjoint, build_matrix, measure
from innovacs.solver.proximal import (
    gradient_step,
    objective,
    prox_dct,
    soft_threshold,
    sparsity_penalty,
)


# ===== Helpers =====


def dct_atom(block_size, u, v):
    coefficients = np.zeros((block_size, block_size))
    coefficients[u, v] = 1.0
    return idctn(coefficients, norm="ortho")


# ===== soft_threshold =====


def test_soft_threshold_shrinks_toward_zero():
    values = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
    np.testing.assert_array_equal(soft_threshold(values, 1.0), [-1.0, 0.0, 0.0, 0.0, 1.0])


# ===== gradient_step =====


def test_gradient_step_fixed_point_when_consistent():
    mat = build_matrix(42, 8)
    x = np.random.default_rng(0).random((8, 8))
    y = measure(x, mat, 1, 20)

    np.testing.assert_array_equal(gradient_step(x, y, mat), x)


def test_gradient_step_from_zero_is_back_projection():
    mat = build_matrix(42, 8)
    y = measure(np.random.default_rng(1).random((8, 8)), mat, 1, 30)

    np.testing.assert_allclose(
        gradient_step(np.zeros((8, 8)), y, mat), adjoint(y, mat, 30), atol=1e-12
    )


@pytest.mark.parametrize("seed", range(10))
def test_gradient_step_never_increases_the_residual(seed):
    rng = np.random.default_rng(seed)
    mat = build_matrix(42, 16)
    count = int(rng.integers(1, 257))
    y = measure(rng.random((16, 16)), mat, 1, count)
    x = rng.random((16, 16))

    before = np.linalg.norm(mat.prefix(count) @ x.reshape(-1) - y)
    after = np.linalg.norm(mat.prefix(count) @ gradient_step(x, y, mat).reshape(-1) - y)
    assert after <= before + 1e-12


def test_gradient_step_with_no_measurements_is_identity():
    mat = build_matrix(42, 4)
    x = np.full((4, 4), 0.25)
    np.testing.assert_array_equal(gradient_step(x, np.empty(0), mat), x)


# ===== prox_dct =====


def test_prox_with_zero_threshold_is_identity():
    x = np.random.default_rng(2).random((8, 8))
    assert np.max(np.abs(prox_dct(x, 0.0) - x)) <= 1e-12


def test_prox_leaves_constant_tiles_unchanged():
    x = np.full((16, 16), 0.37)
    assert np.max(np.abs(prox_dct(x, 0.5) - x)) <= 1e-12


@pytest.mark.parametrize("u,v", [(0, 1), (3, 5), (7, 7)])
def test_prox_shrinks_a_single_atom_by_lambda(u, v):
    c, threshold = 0.8, 0.3
    result = dctn(prox_dct(c * dct_atom(8, u, v), threshold), norm="ortho")

    assert result[u, v] == pytest.approx(c - threshold, abs=1e-12)
    result[u, v] = 0.0
    assert np.max(np.abs(result)) <= 1e-12


def test_prox_zeroes_atoms_below_lambda():
    result = prox_dct(0.2 * dct_atom(8, 2, 2), 0.3)
    assert np.max(np.abs(result)) <= 1e-12


def test_prox_rejects_negative_threshold():
    with pytest.raises(ValueError):
        prox_dct(np.zeros((4, 4)), -0.1)


# ===== objective =====


def test_sparsity_penalty_ignores_dc():
    assert sparsity_penalty(np.full((8, 8), 0.9)) == pytest.approx(0.0, abs=1e-12)
    assert sparsity_penalty(0.5 * dct_atom(8, 1, 2)) == pytest.approx(0.5)


def test_objective_combines_fidelity_and_penalty():
    mat = build_matrix(42, 8)
    x = 0.5 * dct_atom(8, 1, 2)
    y = np.zeros(10)

    fidelity = 0.5 * np.sum((mat.prefix(10) @ x.reshape(-1)) ** 2)
    assert objective(x, y, mat, 0.2) == pytest.approx(fidelity + 0.2 * 0.5)
