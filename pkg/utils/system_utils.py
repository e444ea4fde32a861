"""
Process and machine helpers
"""
import logging
import os
import resource
import sys

import psutil

logger = logging.getLogger(__name__)


def default_worker_count() -> int:
    """
    Worker processes for table regeneration.

    Returns:
        int: Physical core count, logical count as fallback, at least 1
    """
    try:
        count = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True)
    except Exception as e:
        logger.warning(f"CPU count unavailable: {e}")
        count = None
    return max(1, count or 1)


def current_memory_mb() -> float:
    """Resident set size of this process in MiB."""
    try:
        return psutil.Process(os.getpid()).memory_info().rss / (1024 * 1024)
    except (psutil.NoSuchProcess, psutil.AccessDenied):
        return 0.0


def peak_memory_mb() -> float:
    """
    Peak resident set size of this process in MiB.

    ru_maxrss where the platform reports it, otherwise the current RSS.
    """
    try:
        peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    except (AttributeError, ValueError, OSError):
        return round(current_memory_mb(), 1)
    # kilobytes on Linux, bytes on macOS
    scale = 1 if sys.platform == "darwin" else 1024
    return round(max(peak * scale / (1024 * 1024), current_memory_mb()), 1)
