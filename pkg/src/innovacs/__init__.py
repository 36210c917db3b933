"""Block-based adaptive compressive sensing guided by sampling innovation."""

from .imaging import Image, load_pgm, make_synthetic_corpus, save_pgm
from .metrics import psnr, quality_report, ssim
from .pipeline import RunConfig, run_acs, run_comparison, run_sweep, run_uniform


def main() -> int:
    """Console entry point; same as ``acs``."""
    from .cli import main as cli_main

    return cli_main()


__all__ = [
    "Image",
    "RunConfig",
    "load_pgm",
    "main",
    "make_synthetic_corpus",
    "psnr",
    "quality_report",
    "run_acs",
    "run_comparison",
    "run_sweep",
    "run_uniform",
    "save_pgm",
    "ssim",
]
