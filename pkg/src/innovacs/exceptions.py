"""
Custom exception hierarchy for the innovacs project.

This module defines domain-specific exceptions used across the system.
Having a centralized exception hierarchy lets callers handle failures at the
appropriate level of abstraction: the CLI catches ``InnovacsError`` once,
while library users can catch e.g. ``PgmFormatError`` for all raster parse
failures.

All custom exceptions should inherit from `InnovacsError`.
"""


class InnovacsError(Exception):
    """
    Base exception for all innovacs-specific errors.

    This serves as the common ancestor for all custom exceptions in the
    project, allowing callers to catch all domain-related errors with a
    single exception type if desired.
    """

    pass


# ==== Raster I/O ====


class PgmFormatError(InnovacsError):
    """
    Raised when a PGM file cannot be decoded.

    Attributes:
        path (str): The file that failed to parse.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnsupportedFormatError(PgmFormatError):
    """
    Raised when the magic number is anything other than binary graymap ``P5``
    or the maxval is not 255.

    Attributes:
        magic (str): The magic number (or maxval) actually found.
    """

    def __init__(self, path: str, magic: str):
        self.magic = magic
        super().__init__(path, f"unsupported raster format '{magic}' (only 8-bit P5 is read)")


class MalformedHeaderError(PgmFormatError):
    """Raised when the PGM header is missing fields or holds non-integer values."""

    def __init__(self, path: str, detail: str):
        self.detail = detail
        super().__init__(path, f"malformed header: {detail}")


class TruncatedPayloadError(PgmFormatError):
    """
    Raised when the pixel payload is shorter than the header promises.

    Attributes:
        expected (int): Number of payload bytes the header requires.
        actual (int): Number of payload bytes present.
    """

    def __init__(self, path: str, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(path, f"truncated payload: expected {expected} bytes, got {actual}")


# ==== Images and blocks ====


class IntensityRangeError(InnovacsError):
    """
    Raised when an image holds intensities outside [0, 1] or non-finite values.

    Attributes:
        low (float): Smallest value found.
        high (float): Largest value found.
    """

    def __init__(self, low: float, high: float):
        self.low = low
        self.high = high
        super().__init__(f"Intensities must lie in [0, 1]; found range [{low}, {high}]")


class DimensionMismatchError(InnovacsError):
    """
    Raised when two images (or an image and a grid) disagree on dimensions.

    Attributes:
        expected (tuple): Expected shape.
        actual (tuple): Shape actually provided.
    """

    def __init__(self, expected: tuple, actual: tuple):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimension mismatch: expected {expected}, got {actual}")


class BlockCountMismatchError(InnovacsError):
    """
    Raised when a block grid does not hold rows * cols tiles.

    Attributes:
        expected (int): Required block count.
        actual (int): Block count provided.
    """

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Block grid expects {expected} blocks, got {actual}")


class ImageTooSmallError(InnovacsError):
    """Raised when an image is smaller than the SSIM window."""

    def __init__(self, shape: tuple, window: int):
        self.shape = shape
        self.window = window
        super().__init__(f"Image of shape {shape} is smaller than the {window}x{window} window")


# ==== Sensing ====


class MatrixConstructionError(InnovacsError):
    """Raised when Gram-Schmidt keeps producing a numerically dependent row."""

    def __init__(self, row: int, attempts: int):
        self.row = row
        self.attempts = attempts
        super().__init__(f"Row {row} remained numerically dependent after {attempts} redraws")


class MeasurementRangeError(InnovacsError):
    """
    Raised when a requested row interval falls outside [1, B^2].

    Attributes:
        start (int): First requested row (1-based).
        stop (int): Last requested row (1-based, inclusive).
        limit (int): Number of rows available.
    """

    def __init__(self, start: int, stop: int, limit: int):
        self.start = start
        self.stop = stop
        self.limit = limit
        super().__init__(f"Row range [{start}, {stop}] outside [1, {limit}]")


class LengthMismatchError(InnovacsError):
    """Raised when a measurement vector length disagrees with its declared count."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Expected {expected} measurement values, got {actual}")


class CapacityExceededError(InnovacsError):
    """
    Raised when a block (or a whole stage) would exceed its sample capacity.

    Attributes:
        requested (int): Samples requested.
        capacity (int): Samples still available.
    """

    def __init__(self, requested: int, capacity: int, where: str = "block"):
        self.requested = requested
        self.capacity = capacity
        super().__init__(f"{where} capacity exceeded: requested {requested}, available {capacity}")


class BudgetError(InnovacsError):
    """Raised when a sampling-rate configuration leaves no (or a negative) adaptive budget."""

    pass


# ==== Allocation, corpus, config ====


class UnknownCriterionError(InnovacsError):
    """
    Raised when an allocation criterion name is not registered.

    Attributes:
        criterion (str): The unknown criterion identifier.
    """

    def __init__(self, criterion: str):
        self.criterion = criterion
        super().__init__(f"Unknown allocation criterion: {criterion}")


class UnknownCorpusError(InnovacsError):
    """Raised when a synthetic corpus name is not registered."""

    def __init__(self, corpus: str):
        self.corpus = corpus
        super().__init__(f"Unknown synthetic corpus: {corpus}")


class ConfigError(InnovacsError):
    """Base class for experiment configuration failures."""

    pass


class UnknownConfigKeyError(ConfigError):
    """Raised when a config file holds a key that no setting consumes."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"Unknown config key: {key}")


class ConfigValueError(ConfigError):
    """Raised when a config value cannot be parsed or is out of range."""

    def __init__(self, key: str, value, reason: str):
        self.key = key
        self.value = value
        super().__init__(f"Invalid value for '{key}': {value!r} ({reason})")


class MissingInputError(ConfigError):
    """Raised when neither an input image nor a synthetic corpus was given."""

    def __init__(self):
        super().__init__("No input given: pass --image <path> or --corpus <name>")
