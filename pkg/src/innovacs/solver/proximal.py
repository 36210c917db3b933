"""Building blocks of the proximal-gradient iteration.

With orthonormal sensing rows the data-fidelity gradient has Lipschitz
constant exactly 1, so every gradient step below uses unit step size.
The proximal operator is soft-thresholding of the orthonormal 2-D DCT-II
coefficients, with the DC coefficient left untouched.
"""

import numpy as np
from scipy.fft import dctn, idctn

from ..sensing.matrix import SensingMatrix


def soft_threshold(coefficients: np.ndarray, threshold: float) -> np.ndarray:
    """Shrink every entry toward zero by *threshold*."""
    return np.sign(coefficients) * np.maximum(np.abs(coefficients) - threshold, 0.0)


def residual(x: np.ndarray, values: np.ndarray, mat: SensingMatrix) -> np.ndarray:
    """Return A_{1:M} vec(x) - y for M = len(values)."""
    return mat.transform(x)[: values.size] - values


def gradient_step(x: np.ndarray, values: np.ndarray, mat: SensingMatrix) -> np.ndarray:
    """
    Take one unit gradient step on (1/2)||A x - y||^2.

    Args:
        x (np.ndarray): Current B x B estimate.
        values (np.ndarray): The block's M measurements y.
        mat (SensingMatrix): Shared operator; rows 1..M are used.

    Returns:
        np.ndarray: r = x - A^T (A x - y).
    """
    values = np.asarray(values, dtype=np.float64)
    correction = mat.prefix(values.size).T @ residual(x, values, mat)
    return x - correction.reshape(x.shape)


def prox_dct(x: np.ndarray, threshold: float) -> np.ndarray:
    """
    Proximal map of ``threshold * ||non-DC DCT coefficients||_1``.

    Args:
        x (np.ndarray): B x B tile.
        threshold (float): lambda >= 0.

    Returns:
        np.ndarray: The exact minimizer of (1/2)||z - x||^2 + lambda * ||D z||_1
            over the non-DC coefficients.
    """
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    if threshold == 0:
        return np.array(x, dtype=np.float64, copy=True)

    coefficients = dctn(x, norm="ortho")
    dc = coefficients[0, 0]
    shrunk = soft_threshold(coefficients, threshold)
    shrunk[0, 0] = dc
    return idctn(shrunk, norm="ortho")


def sparsity_penalty(x: np.ndarray) -> float:
    """Return the l1 norm of the non-DC DCT coefficients of *x*."""
    coefficients = dctn(x, norm="ortho")
    return float(np.abs(coefficients).sum() - abs(coefficients[0, 0]))


def objective(x: np.ndarray, values: np.ndarray, mat: SensingMatrix, threshold: float) -> float:
    """Return (1/2)||A x - y||^2 + lambda * ||non-DC DCT(x)||_1."""
    values = np.asarray(values, dtype=np.float64)
    fidelity = 0.5 * float(np.sum(residual(x, values, mat) ** 2))
    return fidelity + threshold * sparsity_penalty(x)
