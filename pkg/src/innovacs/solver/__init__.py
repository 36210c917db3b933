from .proximal import gradient_step, objective, prox_dct
from .reconstruction import (
    SolverConfig,
    objective_history,
    reconstruct,
    reconstruct_blocks,
    solve_block,
)

__all__ = [
    "SolverConfig",
    "gradient_step",
    "objective",
    "objective_history",
    "prox_dct",
    "reconstruct",
    "reconstruct_blocks",
    "solve_block",
]
