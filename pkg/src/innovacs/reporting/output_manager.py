"""Output management for experiment artifacts.

This module centralizes file and directory concerns of an experiment run.
It writes, per image and criterion:
- The final reconstruction (PGM)
- A stage trace (tab-separated text)
- Allocation heatmaps per stage and after the last stage (CSV + PGM)

and, once per experiment, the summary, feedback and sweep tables (CSV).
Every file is rewritten from scratch, and nothing time-dependent goes into
it, so rerunning an experiment reproduces the directory byte for byte.
"""

import os
from dataclasses import dataclass

import pandas as pd

from ..imaging.image import grid_shape
from ..imaging.pgm import save_pgm
from ..pipeline.comparison import ComparisonRow
from ..sensing.ledger import BudgetLedger
from .heatmap import heatmap_grid, write_heatmap_csv, write_heatmap_pgm
from .trace_logger import (
    trace_writer,
    write_final_record,
    write_ledger_records,
    write_stage_record,
    write_trace_header,
)

SUMMARY_NAME = "summary.csv"
FEEDBACK_NAME = "feedback.csv"
SWEEP_NAME = "sweep.csv"


@dataclass
class RunStats:
    """In-memory counters used to produce aggregate reporting metrics."""

    images: int = 0
    runs_ok: int = 0
    runs_failed: int = 0

    @property
    def runs(self) -> int:
        """Return the number of runs attempted."""
        return self.runs_ok + self.runs_failed

    @property
    def success_rate(self) -> float:
        """Return the fraction of attempted runs that completed."""
        if self.runs == 0:
            return 0.0
        return self.runs_ok / self.runs


class OutputManager:
    """Own the output directory of one experiment.

    The manager is intended to be used as a context manager; entering it
    creates the directory.
    """

    def __init__(
        self,
        output_dir: str,
        emit_recon: bool = True,
        emit_traces: bool = True,
        emit_heatmaps: bool = True,
    ):
        """Configure the output location and which per-run artifacts to write.

        Args:
            output_dir (str): Directory for output files.
            emit_recon (bool): Write ``recon.pgm`` per run.
            emit_traces (bool): Write ``trace.tsv`` per run.
            emit_heatmaps (bool): Write heatmap CSV/PGM files per run.
        """
        self.output_dir = output_dir
        self.emit_recon = emit_recon
        self.emit_traces = emit_traces
        self.emit_heatmaps = emit_heatmaps
        self.written: list[str] = []

    def __enter__(self):
        os.makedirs(self.output_dir, exist_ok=True)
        return self

    def __exit__(self, exc_type, exc, tb):
        return None

    def path(self, *parts: str) -> str:
        """Return a path inside the output directory."""
        return os.path.join(self.output_dir, *parts)

    def run_dir(self, image_id: str, criterion: str) -> str:
        """Create (if needed) and return the directory of one run."""
        directory = self.path(image_id, criterion)
        os.makedirs(directory, exist_ok=True)
        return directory

    def _record(self, path: str) -> str:
        self.written.append(path)
        return path

    def write_run(
        self,
        image_id: str,
        row: ComparisonRow,
        dims: tuple[int, int],
        ledger: BudgetLedger | None = None,
    ) -> None:
        """Write every enabled artifact of one run.

        Args:
            image_id (str): Image identifier (directory name).
            row (ComparisonRow): The run's outcome.
            dims (tuple[int, int]): Original image dimensions (H, W).
            ledger (BudgetLedger | None): Budget of a multi-stage run, appended
                to the trace when given.
        """
        directory = self.run_dir(image_id, row.criterion)

        if self.emit_recon:
            save_pgm(row.image, self._record(os.path.join(directory, "recon.pgm")))

        if self.emit_traces:
            with open(
                self._record(os.path.join(directory, "trace.tsv")),
                "w",
                newline="",
                encoding="utf-8",
            ) as handle:
                writer = trace_writer(handle)
                write_trace_header(writer=writer)
                for trace in row.traces:
                    write_stage_record(trace, writer=writer)
                write_final_record(row.psnr, row.ssim, row.total_samples, writer=writer)
                if ledger is not None:
                    write_ledger_records(ledger, writer=writer)

        if self.emit_heatmaps:
            rows, cols = grid_shape(dims[0], dims[1], row.plan.block_size)
            capacity = row.plan.block_size**2
            heatmaps = [(f"heatmap_stage{t.stage}", t.cumulative) for t in row.traces]
            heatmaps.append(("heatmap_final", row.plan.final))
            for name, counts in heatmaps:
                grid = heatmap_grid(counts, rows, cols)
                write_heatmap_csv(grid, self._record(os.path.join(directory, f"{name}.csv")))
                write_heatmap_pgm(
                    grid, capacity, self._record(os.path.join(directory, f"{name}.pgm"))
                )

    def write_table(self, table: pd.DataFrame, name: str) -> str:
        """Write a result table as CSV and return its path."""
        path = self._record(self.path(name))
        table.to_csv(path, index=False, lineterminator="\n")
        return path

    def write_summary(self, table: pd.DataFrame) -> str:
        """Write the criterion x image summary table."""
        return self.write_table(table, SUMMARY_NAME)

    def write_feedback(self, table: pd.DataFrame) -> str:
        """Write the feedback table of a comparison."""
        return self.write_table(table, FEEDBACK_NAME)

    def write_sweep(self, table: pd.DataFrame) -> str:
        """Write the rate-sweep table."""
        return self.write_table(table, SWEEP_NAME)
