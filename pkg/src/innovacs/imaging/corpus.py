"""Seeded synthetic image corpora.

Each corpus is a deterministic function of its seed. ``heterogeneous16``
holds sixteen 96x96 images; every image has exactly one high-frequency
quadrant (checkerboard, stripes or fine-grained noise) while the other
three quadrants are flat or linear ramps. That split is what makes block-adaptive
allocation pay off, so the corpus is the desk-scale testbed for the
uniform-vs-adaptive and criterion comparisons.
"""

from collections.abc import Callable

import numpy as np
from scipy import ndimage

from ..exceptions import UnknownCorpusError
from .image import Image

TEXTURES = ("checkerboard", "stripes", "noise")
NOISE_GRAIN = 0.5


def _texture(kind: str, size: int, rng: np.random.Generator) -> np.ndarray:
    """Return a size x size texture with peak amplitude in [0.2, 0.4]."""
    amplitude = rng.uniform(0.2, 0.4)
    yy, xx = np.mgrid[0:size, 0:size]

    if kind == "checkerboard":
        cell = int(rng.integers(1, 4))
        pattern = ((yy // cell + xx // cell) % 2) * 2.0 - 1.0
    elif kind == "stripes":
        period = int(rng.integers(2, 7))
        orientation = int(rng.integers(3))
        coord = (yy, xx, yy + xx)[orientation]
        pattern = np.sign(np.sin(2 * np.pi * (coord + 0.5) / period))
    else:
        # Keep sigma small: the Laplacian energy must stay far above the flat quadrants.
        grain = ndimage.gaussian_filter(
            rng.uniform(-1.0, 1.0, size=(size, size)), sigma=NOISE_GRAIN, mode="reflect"
        )
        pattern = grain / np.abs(grain).max()

    return amplitude * pattern


def _smooth(size: int, rng: np.random.Generator) -> np.ndarray:
    """Return a flat patch or a linear ramp with values in [0.2, 0.8]."""
    if rng.random() < 0.5:
        return np.full((size, size), rng.uniform(0.2, 0.8))

    start, stop = rng.uniform(0.2, 0.8, size=2)
    ramp = np.linspace(start, stop, size)
    return np.tile(ramp, (size, 1)) if rng.random() < 0.5 else np.tile(ramp[:, None], (1, size))


def heterogeneous_image(rng: np.random.Generator, size: int = 96) -> tuple[Image, int]:
    """Draw one image with a single textured quadrant.

    Args:
        rng (np.random.Generator): Source of randomness.
        size (int): Edge length (even).

    Returns:
        tuple[Image, int]: The image and the textured quadrant index
            (0 = top-left, 1 = top-right, 2 = bottom-left, 3 = bottom-right).
    """
    half = size // 2
    textured = int(rng.integers(4))
    raster = np.empty((size, size))

    for quadrant in range(4):
        r, c = divmod(quadrant, 2)
        view = raster[r * half : (r + 1) * half, c * half : (c + 1) * half]
        if quadrant == textured:
            kind = TEXTURES[int(rng.integers(len(TEXTURES)))]
            view[:] = 0.5 + _texture(kind, half, rng)
        else:
            view[:] = _smooth(half, rng)

    return Image(np.clip(raster, 0.0, 1.0)), textured


def heterogeneous16(seed: int) -> list[Image]:
    """Return sixteen 96x96 images, each with one textured quadrant."""
    return [heterogeneous_image(np.random.default_rng([seed, index]))[0] for index in range(16)]


CORPUS_MAP: dict[str, Callable[[int], list[Image]]] = {
    "heterogeneous16": heterogeneous16,
}


def make_synthetic_corpus(name: str, seed: int) -> list[Image]:
    """
    Build a named synthetic corpus.

    Args:
        name (str): Registered corpus name (see ``CORPUS_MAP``).
        seed (int): Generator seed; the corpus is a pure function of it.

    Returns:
        list[Image]: The corpus images.

    Raises:
        UnknownCorpusError: If the name is not registered.
    """
    factory = CORPUS_MAP.get(name.strip().lower())
    if factory is None:
        raise UnknownCorpusError(name)
    return factory(seed)


def corpus_ids(name: str, count: int) -> list[str]:
    """Return ``<name>_00``, ``<name>_01``, ... for a corpus of *count* images."""
    return [f"{name.strip().lower()}_{index:02d}" for index in range(count)]
