"""Per-block measurement bookkeeping.

A ``MeasurementSet`` stores, for every block, the ordered values measured
so far with the shared sensing matrix. Stages only ever concatenate new
values onto a block; existing values never change.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..exceptions import CapacityExceededError
from .matrix import SensingMatrix, measure


def _frozen(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """
    Ordered measurement values per block.

    Attributes:
        block_size (int): Block edge length B (capacity is B^2 per block).
        seed (int): Seed of the sensing matrix the values belong to.
        values (tuple[np.ndarray, ...]): One 1-D array y_n per block.
    """

    block_size: int
    seed: int
    values: tuple[np.ndarray, ...]

    @classmethod
    def empty(cls, num_blocks: int, mat: SensingMatrix) -> MeasurementSet:
        """Return a set with zero samples for each of *num_blocks* blocks."""
        nothing = _frozen(np.empty(0, dtype=np.float64))
        return cls(block_size=mat.block_size, seed=mat.seed, values=(nothing,) * num_blocks)

    @property
    def capacity(self) -> int:
        """Return B^2, the maximum count per block."""
        return self.block_size * self.block_size

    @property
    def num_blocks(self) -> int:
        """Return N."""
        return len(self.values)

    @property
    def counts(self) -> tuple[int, ...]:
        """Return M_n for every block."""
        return tuple(v.size for v in self.values)

    @property
    def total(self) -> int:
        """Return the number of samples across all blocks."""
        return sum(self.counts)

    def count(self, block_index: int) -> int:
        """Return M_n for one block."""
        return self.values[block_index].size


def append(ms: MeasurementSet, block_index: int, new_values: np.ndarray) -> MeasurementSet:
    """
    Concatenate values onto one block's measurement vector.

    Args:
        ms (MeasurementSet): Current set (left untouched).
        block_index (int): Block receiving the values.
        new_values (np.ndarray): Values measured with the next rows.

    Returns:
        MeasurementSet: A new set; the block's old values form its prefix.

    Raises:
        CapacityExceededError: If the block would exceed B^2 values.
    """
    new_values = np.asarray(new_values, dtype=np.float64).reshape(-1)
    if new_values.size == 0:
        return ms

    current = ms.values[block_index]
    available = ms.capacity - current.size
    if new_values.size > available:
        raise CapacityExceededError(new_values.size, available)

    values = list(ms.values)
    values[block_index] = _frozen(np.concatenate([current, new_values]))
    return replace(ms, values=tuple(values))


def sample_more(
    ms: MeasurementSet,
    blocks: tuple[np.ndarray, ...],
    mat: SensingMatrix,
    extra: list[int] | tuple[int, ...],
) -> MeasurementSet:
    """Take ``extra[n]`` further samples of every block n (the next unused rows).

    Args:
        ms (MeasurementSet): Current set.
        blocks: Ground-truth tiles being sensed.
        mat (SensingMatrix): Shared operator.
        extra: Additional sample count per block.

    Returns:
        MeasurementSet: The set after concatenation.
    """
    for index, (block, amount) in enumerate(zip(blocks, extra)):
        if amount <= 0:
            continue
        have = ms.count(index)
        if have + amount > ms.capacity:
            raise CapacityExceededError(amount, ms.capacity - have)
        ms = append(ms, index, measure(block, mat, have + 1, have + amount))
    return ms
