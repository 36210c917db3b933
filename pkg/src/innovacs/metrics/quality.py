"""Fidelity metrics on the [0, 1] intensity scale (peak value 1).

PSNR is capped at ``PSNR_CAP`` dB for identical images so reports stay
finite. SSIM is the single-scale formulation with an 11x11 Gaussian window
(sigma 1.5), C1 = (0.01)^2 and C2 = (0.03)^2, averaged over valid window
positions.
"""

from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from ..exceptions import DimensionMismatchError, ImageTooSmallError
from ..imaging.image import Image

PSNR_CAP = 100.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01**2
SSIM_C2 = 0.03**2


@dataclass(frozen=True)
class QualityReport:
    """PSNR (dB), SSIM and MSE of one reconstruction against its reference."""

    psnr: float
    ssim: float
    mse: float


def _check_pair(a: Image, b: Image) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(a.shape, b.shape)


def mse(a: Image, b: Image) -> float:
    """Return the mean squared intensity difference."""
    _check_pair(a, b)
    return float(np.mean((a.data - b.data) ** 2))


def psnr(a: Image, b: Image) -> float:
    """Return 10 * log10(1 / mse), or ``PSNR_CAP`` when the images are identical."""
    error = mse(a, b)
    if error == 0.0:
        return PSNR_CAP
    return float(10.0 * np.log10(1.0 / error))


def gaussian_window(size: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    """Return a normalized size x size Gaussian kernel."""
    offsets = np.arange(size) - (size - 1) / 2.0
    profile = np.exp(-(offsets**2) / (2.0 * sigma**2))
    kernel = np.outer(profile, profile)
    return kernel / kernel.sum()


def ssim(a: Image, b: Image) -> float:
    """
    Return the mean structural similarity of two images.

    Raises:
        DimensionMismatchError: If shapes differ.
        ImageTooSmallError: If either side is shorter than the window.
    """
    _check_pair(a, b)
    if min(a.shape) < SSIM_WINDOW:
        raise ImageTooSmallError(a.shape, SSIM_WINDOW)

    window = gaussian_window()

    def local_mean(field: np.ndarray) -> np.ndarray:
        return convolve2d(field, window, mode="valid")

    x, y = a.data, b.data
    mu_x, mu_y = local_mean(x), local_mean(y)
    var_x = local_mean(x * x) - mu_x**2
    var_y = local_mean(y * y) - mu_y**2
    cov = local_mean(x * y) - mu_x * mu_y

    numerator = (2 * mu_x * mu_y + SSIM_C1) * (2 * cov + SSIM_C2)
    denominator = (mu_x**2 + mu_y**2 + SSIM_C1) * (var_x + var_y + SSIM_C2)
    return float(np.mean(numerator / denominator))


def quality_report(reference: Image, estimate: Image) -> QualityReport:
    """Compute PSNR, SSIM and MSE in one call."""
    return QualityReport(
        psnr=psnr(reference, estimate),
        ssim=ssim(reference, estimate),
        mse=mse(reference, estimate),
    )
