from .quality import PSNR_CAP, QualityReport, mse, psnr, quality_report, ssim

__all__ = ["PSNR_CAP", "QualityReport", "mse", "psnr", "quality_report", "ssim"]
