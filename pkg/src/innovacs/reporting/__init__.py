from .output_manager import OutputManager, RunStats
from .trace_logger import read_trace

__all__ = ["OutputManager", "RunStats", "read_trace"]
