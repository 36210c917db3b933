"""Trace-record writer utilities for sensing runs.

This module owns trace persistence so the pipeline can stay free of I/O.
Records are tab-separated text:

- Header: ``stage, psnr, block_index, alpha, allocated, cumulative``
    (the last four columns repeat once per block in stage records).
- Stage rows: ``[s, psnr, 0, alpha_0, M_0s, cum_0, 1, alpha_1, ...]``.
- Final row: ``["final", psnr, ssim, total_samples]``.
- Ledger rows: ``["ledger", key, value]``, one per budget entry.

Floats are written with ``repr`` so every number can be read back exactly.
"""

import csv
import os
from typing import Any

from ..pipeline.stage_trace import StageTrace
from ..sensing.ledger import BudgetLedger

TRACE_HEADER = ["stage", "psnr", "block_index", "alpha", "allocated", "cumulative"]


def trace_writer(handle) -> Any:
    """Return a csv writer emitting tab-separated, newline-terminated records."""
    return csv.writer(handle, delimiter="\t", lineterminator="\n")


def _emit(row: list, log_path: str, writer: Any | None) -> None:
    if writer is not None:
        writer.writerow(row)
        return

    log_dir = os.path.dirname(log_path)
    if log_dir and not os.path.exists(log_dir):
        os.makedirs(log_dir, exist_ok=True)

    with open(log_path, "a", newline="", encoding="utf-8") as f:
        trace_writer(f).writerow(row)


def write_trace_header(log_path: str = "trace.tsv", writer: Any | None = None) -> None:
    """Write the header line.

    Args:
        log_path (str): Destination path when ``writer`` is not provided.
        writer (Any | None): Optional csv.writer-compatible object.
    """
    _emit(list(TRACE_HEADER), log_path, writer)


def stage_record(trace: StageTrace) -> list:
    """Return the row written for one stage."""
    row: list = [trace.stage, repr(trace.psnr)]
    for index, (alpha, allocated, cumulative) in enumerate(
        zip(trace.scores, trace.allocated, trace.cumulative)
    ):
        row += [index, repr(alpha), allocated, cumulative]
    return row


def write_stage_record(
    trace: StageTrace, log_path: str = "trace.tsv", writer: Any | None = None
) -> None:
    """Write one stage row.

    Args:
        trace (StageTrace): The stage to record.
        log_path (str): Destination path when ``writer`` is not provided.
        writer (Any | None): Optional csv.writer-compatible object.
    """
    _emit(stage_record(trace), log_path, writer)


def write_final_record(
    psnr: float,
    ssim: float,
    total_samples: int,
    log_path: str = "trace.tsv",
    writer: Any | None = None,
) -> None:
    """Write the closing row with the final quality and sample count."""
    _emit(["final", repr(float(psnr)), repr(float(ssim)), int(total_samples)], log_path, writer)


def write_ledger_records(
    ledger: BudgetLedger, log_path: str = "trace.tsv", writer: Any | None = None
) -> None:
    """Write the budget ledger as key/value rows."""
    for key, value in ledger.as_records():
        _emit(["ledger", key, value], log_path, writer)


def read_trace(log_path: str) -> list[list[str]]:
    """Read a trace file back into rows of strings."""
    with open(log_path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f, delimiter="\t"))
