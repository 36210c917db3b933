"""Binary graymap (PGM ``P5``) reader and writer.

Only 8-bit rasters (maxval 255) are supported. Intensities map to [0, 1]
as ``v / 255`` on load and back as ``round(v * 255)`` (round half up,
clamped to [0, 255]) on save.
"""

import os
import re

import numpy as np

from ..exceptions import MalformedHeaderError, TruncatedPayloadError, UnsupportedFormatError
from .image import Image

_MAXVAL = 255

# magic, width, height, maxval separated by whitespace; '#' comments allowed
_TOKEN = re.compile(rb"#[^\n]*\n?|\S+")


def _read_header(raw: bytes, path: str) -> tuple[int, int, int]:
    """Parse the four header tokens and return ``(width, height, payload_offset)``."""
    tokens: list[bytes] = []
    offset = 0

    for match in _TOKEN.finditer(raw):
        token = match.group(0)
        if token.startswith(b"#"):
            continue
        tokens.append(token)
        offset = match.end()
        if len(tokens) == 1 and token != b"P5":
            raise UnsupportedFormatError(path, token.decode("ascii", errors="replace"))
        if len(tokens) == 4:
            break

    if len(tokens) < 4:
        raise MalformedHeaderError(path, f"expected 4 header fields, found {len(tokens)}")

    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise MalformedHeaderError(path, "non-integer dimension or maxval") from exc

    if width < 1 or height < 1:
        raise MalformedHeaderError(path, f"non-positive dimensions {width}x{height}")
    if maxval != _MAXVAL:
        raise UnsupportedFormatError(path, f"maxval {maxval}")

    # exactly one whitespace byte separates maxval from the payload
    if offset < len(raw) and not raw[offset : offset + 1].isspace():
        raise MalformedHeaderError(path, "missing whitespace before payload")
    return width, height, offset + 1


def load_pgm(path: str | os.PathLike) -> Image:
    """Read an 8-bit binary PGM file.

    Args:
        path: File to read.

    Returns:
        Image: Intensities mapped ``v / 255`` into [0, 1].

    Raises:
        UnsupportedFormatError: Magic other than ``P5`` or maxval other than 255.
        MalformedHeaderError: Missing or non-integer header fields.
        TruncatedPayloadError: Fewer payload bytes than ``width * height``.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        raw = fh.read()

    width, height, start = _read_header(raw, path)
    expected = width * height
    payload = raw[start : start + expected]
    if len(payload) < expected:
        raise TruncatedPayloadError(path, expected, len(payload))

    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    return Image(pixels.astype(np.float64) / _MAXVAL)


def to_bytes(img: Image) -> np.ndarray:
    """Quantize intensities to uint8 with round-half-up."""
    scaled = np.floor(img.data * _MAXVAL + 0.5)
    return np.clip(scaled, 0, _MAXVAL).astype(np.uint8)


def save_pgm(img: Image, path: str | os.PathLike) -> None:
    """Write *img* as an 8-bit binary PGM file.

    Args:
        img (Image): Image to write.
        path: Destination file. Parent directories must exist.

    Raises:
        OSError: If the path is not writable.
    """
    header = f"P5\n{img.width} {img.height}\n{_MAXVAL}\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + to_bytes(img).tobytes())


def image_ids(paths: list[str | os.PathLike]) -> list[str]:
    """Derive output names from file stems; repeated stems get ``_2``, ``_3`` suffixes."""
    ids: list[str] = []
    seen: dict[str, int] = {}
    for path in paths:
        stem = os.path.splitext(os.path.basename(os.fspath(path)))[0] or "image"
        seen[stem] = seen.get(stem, 0) + 1
        ids.append(stem if seen[stem] == 1 else f"{stem}_{seen[stem]}")
    return ids


def load_images(paths: list[str | os.PathLike]) -> dict[str, Image]:
    """Load several PGM files keyed by their image ids, in the given order."""
    return {image_id: load_pgm(path) for image_id, path in zip(image_ids(paths), paths)}
