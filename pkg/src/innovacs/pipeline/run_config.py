"""Settings of a single sensing run."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exceptions import ConfigValueError
from ..sensing.ledger import BudgetLedger, make_ledger
from ..sensing.matrix import MAX_BLOCK_SIZE, SensingMatrix, build_matrix
from ..solver.reconstruction import SolverConfig

DEFAULT_SR_INIT = 0.02
DEFAULT_STAGES = 4
DEFAULT_BLOCK_SIZE = 32
DEFAULT_ALLOCATOR = "innovation"
DEFAULT_SEED = 42
DEFAULT_IE_ITERATIONS = 24
DEFAULT_FINAL_ITERATIONS = 24
DEFAULT_LAMBDA_START = 0.1
DEFAULT_IE_LAMBDA_END = 0.02
DEFAULT_LAMBDA_END = 0.005


def pipeline_solver(iterations: int, lambda_end: float) -> SolverConfig:
    """Return the accelerated solver the pipeline runs by default."""
    return SolverConfig(
        iterations=iterations,
        lambda_start=DEFAULT_LAMBDA_START,
        lambda_end=lambda_end,
        accelerated=True,
    )


@dataclass(frozen=True)
class RunConfig:
    """
    Parameters of one adaptive (or uniform) sensing run.

    Attributes:
        sr (float): Total sampling rate SR.
        sr_init (float): Initial uniform rate.
        stages (int): Number of adaptive stages S.
        sr_is (float | None): Innovation-sampling rate; ``None`` means (SR - SR_init) / (2S).
        block_size (int): Block edge length B.
        allocator (str): Criterion that scores blocks in each stage.
        ie_solver (SolverConfig): Innovation estimator run between stages; it
            stops at a coarser threshold than the final solver.
        final_solver (SolverConfig): Solver of the final reconstruction.
        seed (int): Sensing-matrix seed.
        dc_row (bool): Put the constant atom first in the sensing matrix.
        workers (int): Threads for per-block solves.
    """

    sr: float
    sr_init: float = DEFAULT_SR_INIT
    stages: int = DEFAULT_STAGES
    sr_is: float | None = None
    block_size: int = DEFAULT_BLOCK_SIZE
    allocator: str = DEFAULT_ALLOCATOR
    ie_solver: SolverConfig = field(
        default_factory=lambda: pipeline_solver(DEFAULT_IE_ITERATIONS, DEFAULT_IE_LAMBDA_END)
    )
    final_solver: SolverConfig = field(
        default_factory=lambda: pipeline_solver(DEFAULT_FINAL_ITERATIONS, DEFAULT_LAMBDA_END)
    )
    seed: int = DEFAULT_SEED
    dc_row: bool = True
    workers: int = 1

    def __post_init__(self):
        if not 0.0 < self.sr <= 1.0:
            raise ConfigValueError("sr", self.sr, "must satisfy 0 < sr <= 1")
        if not 1 <= self.block_size <= MAX_BLOCK_SIZE:
            raise ConfigValueError(
                "block_size", self.block_size, f"must be in [1, {MAX_BLOCK_SIZE}]"
            )
        if self.stages < 1:
            raise ConfigValueError("stages", self.stages, "must be >= 1")
        if self.workers < 1:
            raise ConfigValueError("workers", self.workers, "must be >= 1")

    def ledger(self, height: int, width: int) -> BudgetLedger:
        """Return the sample budget of an H x W image under this config."""
        return make_ledger(
            height,
            width,
            self.block_size,
            self.sr,
            sr_init=self.sr_init,
            stages=self.stages,
            sr_is=self.sr_is,
        )

    def matrix(self) -> SensingMatrix:
        """Return the (cached) sensing matrix of this config."""
        return build_matrix(self.seed, self.block_size, dc_row=self.dc_row)
