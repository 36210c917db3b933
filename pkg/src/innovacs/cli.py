"""Command-line interface for innovacs experiments.

Subcommands:
    * ``acs run``: one criterion (``--allocator``) per image
    * ``acs compare``: every criterion in ``--criteria`` per image
    * ``acs sweep``: criteria over a grid of sampling rates
    * ``acs gen-corpus``: write a synthetic corpus as PGM files

Outputs written per run (inside ``--out``):
    * ``summary.csv``: criterion x image quality table
    * ``<image>/<criterion>/recon.pgm``: final reconstruction
    * ``<image>/<criterion>/trace.tsv``: per-stage allocation records
    * ``<image>/<criterion>/heatmap_*.csv|pgm``: cumulative samples per block
    * ``feedback.csv`` (compare), ``sweep.csv`` (sweep)
"""

# Python version precheck
import sys

from tqdm import tqdm

if sys.version_info < (3, 14):
    sys.exit("Error: Python 3.14 or higher is required. Please upgrade your interpreter.")

import argparse
import os

from .allocation.criteria import CRITERIA
from .config import ExperimentConfig, parse_config
from .exceptions import InnovacsError
from .imaging.corpus import corpus_ids, make_synthetic_corpus
from .imaging.image import Image
from .imaging.pgm import load_images, save_pgm
from .pipeline.comparison import (
    ComparisonRow,
    comparison_table,
    feedback_report,
    feedback_table,
    run_criterion,
    run_sweep,
)
from .reporting.output_manager import OutputManager, RunStats

####################################################################
# Developer-facing output
####################################################################

# Switched on by --verbose / ``verbose = true``; goes to stderr so the
# output directory never depends on it.
VERBOSE_OUTPUT_ENABLED = False


def _verbose_log(message: str) -> None:
    """Central log sink for progress messages.

    Args:
        message (str): The log message to print.
    """
    if VERBOSE_OUTPUT_ENABLED:
        print(message, file=sys.stderr)


####################################################################
# Inputs
####################################################################


def _load_inputs(cfg: ExperimentConfig) -> dict[str, Image]:
    """Return the configured images keyed by image id (files first, then corpus)."""
    images = load_images(cfg.image) if cfg.image else {}
    if cfg.corpus is not None:
        corpus = make_synthetic_corpus(cfg.corpus, cfg.corpus_seed)
        images.update(zip(corpus_ids(cfg.corpus, len(corpus)), corpus))
    return images


####################################################################
# Experiment execution
####################################################################


def run_experiment(cfg: ExperimentConfig, criteria: list[str] | None = None) -> int:
    """Run every criterion on every configured image and write all artifacts.

    Args:
        cfg (ExperimentConfig): Resolved experiment config.
        criteria (list[str] | None): Criteria to run; defaults to ``[cfg.allocator]``.
            With more than one criterion a feedback table is written too.

    Returns:
        int: 0 if every run completed and every artifact was written, else 1.
    """
    criteria = list(criteria or [cfg.allocator])
    run_cfg = cfg.run_config()
    images = _load_inputs(cfg)
    stats = RunStats()
    results: dict[str, list[ComparisonRow]] = {}

    with OutputManager(
        cfg.out,
        emit_recon=cfg.emit_recon,
        emit_traces=cfg.emit_traces,
        emit_heatmaps=cfg.emit_heatmaps,
    ) as outputs:
        for image_id, img in tqdm(images.items(), total=len(images), disable=len(images) < 2):
            stats.images += 1
            rows = []
            for criterion in criteria:
                _verbose_log(f"[{image_id}] {criterion}: sensing at sr={cfg.sr}")
                try:
                    row = run_criterion(img, run_cfg, criterion)
                    ledger = None
                    if row.traces:
                        ledger = run_cfg.ledger(img.height, img.width)
                    outputs.write_run(image_id, row, img.shape, ledger)
                except (InnovacsError, OSError) as exc:
                    stats.runs_failed += 1
                    print(f"Error: [{image_id}/{criterion}] {exc}", file=sys.stderr)
                    continue
                stats.runs_ok += 1
                rows.append(row)
                _verbose_log(
                    f"[{image_id}] {criterion}: psnr={row.psnr:.3f} ssim={row.ssim:.4f} "
                    f"samples={row.total_samples}"
                )
            results[image_id] = rows

        summary_path = outputs.write_summary(comparison_table(results))
        if len(criteria) > 1:
            runs: dict[str, list] = {name: [] for name in criteria}
            for rows in results.values():
                for row in rows:
                    runs[row.criterion].append(row.traces)
            outputs.write_feedback(feedback_table(feedback_report(runs)))

    _verbose_log(f"Summary written to: {summary_path}")
    _verbose_log(
        f"Summary metrics: images={stats.images}, runs={stats.runs}, "
        f"success_rate={stats.success_rate:.2%}"
    )
    return 0 if stats.runs_failed == 0 else 1


def run_rate_sweep(cfg: ExperimentConfig, rates: list[float]) -> int:
    """Run the criteria of *cfg* over several rates and write ``sweep.csv``."""
    images = _load_inputs(cfg)
    with OutputManager(cfg.out) as outputs:
        table = run_sweep(images, cfg.run_config(), rates, cfg.criteria)
        path = outputs.write_sweep(table)
    _verbose_log(f"Sweep written to: {path}")
    return 0


def generate_corpus(name: str, seed: int, out: str) -> int:
    """Write a synthetic corpus as ``<out>/<name>_<index>.pgm`` files."""
    images = make_synthetic_corpus(name, seed)
    os.makedirs(out, exist_ok=True)
    for image_id, img in zip(corpus_ids(name, len(images)), images):
        save_pgm(img, os.path.join(out, f"{image_id}.pgm"))
    _verbose_log(f"Wrote {len(images)} images to {out}")
    return 0


####################################################################
# CLI argument parsing and main entry
####################################################################


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="Path to a config file.")
    parser.add_argument(
        "--image", action="append", default=None, help="Input PGM file (can be repeated)."
    )
    parser.add_argument("--corpus", default=None, help="Synthetic corpus name.")
    parser.add_argument("--corpus-seed", type=int, default=None, help="Corpus seed (default: 42).")
    parser.add_argument("--out", default=None, help="Output directory (default: acs_output).")
    parser.add_argument("--verbose", action="store_true", default=None, help="Log progress.")


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sr", type=float, default=None, help="Total sampling rate.")
    parser.add_argument("--sr-init", type=float, default=None, help="Initial rate (0.02).")
    parser.add_argument("--sr-is", type=float, default=None, help="Innovation-sampling rate.")
    parser.add_argument("--stages", type=int, default=None, help="Adaptive stages (4).")
    parser.add_argument("--block-size", type=int, default=None, help="Block size B (32).")
    parser.add_argument("--seed", type=int, default=None, help="Sensing-matrix seed (42).")
    parser.add_argument("--workers", type=int, default=None, help="Threads per solve (1).")
    parser.add_argument(
        "--no-heatmaps", dest="emit_heatmaps", action="store_false", default=None
    )
    parser.add_argument("--no-traces", dest="emit_traces", action="store_false", default=None)
    parser.add_argument("--no-recon", dest="emit_recon", action="store_false", default=None)


def build_parser() -> argparse.ArgumentParser:
    """Build the ``acs`` argument parser."""
    argparser = argparse.ArgumentParser(
        prog="acs", description="Block-based adaptive compressive sensing experiments."
    )
    commands = argparser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run one allocation criterion.")
    _add_input_arguments(run)
    _add_run_arguments(run)
    run.add_argument("--allocator", choices=CRITERIA, default=None, help="Criterion.")

    compare = commands.add_parser("compare", help="Run several criteria side by side.")
    _add_input_arguments(compare)
    _add_run_arguments(compare)
    compare.add_argument("--criteria", default=None, help="Comma-separated criteria.")

    sweep = commands.add_parser("sweep", help="Compare criteria over sampling rates.")
    _add_input_arguments(sweep)
    _add_run_arguments(sweep)
    sweep.add_argument("--criteria", default=None, help="Comma-separated criteria.")
    sweep.add_argument(
        "--rates", type=_float_list, default=None, help="Comma-separated rates (e.g. 0.1,0.25)."
    )

    corpus = commands.add_parser("gen-corpus", help="Write a synthetic corpus as PGM files.")
    _add_input_arguments(corpus)
    return argparser


def _flags(args: argparse.Namespace) -> dict:
    """Map parsed arguments onto config keys (None means not given)."""
    keys = (
        "image", "corpus", "corpus_seed", "out", "verbose", "sr", "sr_init", "sr_is",
        "stages", "block_size", "seed", "workers", "emit_heatmaps", "emit_traces",
        "emit_recon", "allocator", "criteria",
    )  # fmt: skip
    return {key: getattr(args, key) for key in keys if hasattr(args, key)}


DEFAULT_SWEEP_RATES = [0.10, 0.25, 0.30, 0.40, 0.50]


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the ``acs`` CLI.

    Example:
        acs run --image lena.pgm --sr 0.25 --out results
        acs compare --corpus heterogeneous16 --sr 0.10
        acs gen-corpus --corpus heterogeneous16 --out corpus

    Returns:
        int: Process exit status (0 on success, 1 on any failure).
    """
    global VERBOSE_OUTPUT_ENABLED

    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen-corpus":
            cfg = parse_config(args.config, _flags(args))
            VERBOSE_OUTPUT_ENABLED = cfg.verbose
            return generate_corpus(cfg.corpus or "heterogeneous16", cfg.corpus_seed, cfg.out)

        cfg = parse_config(args.config, _flags(args), require_input=True)
        VERBOSE_OUTPUT_ENABLED = cfg.verbose
        if args.command == "run":
            return run_experiment(cfg)
        if args.command == "compare":
            return run_experiment(cfg, cfg.criteria)
        return run_rate_sweep(cfg, args.rates or DEFAULT_SWEEP_RATES)
    except (InnovacsError, OSError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
