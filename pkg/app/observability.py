"""Centralized observability setup using AWS Lambda Powertools."""

import sys
import time
from contextlib import contextmanager
from typing import Iterator

from aws_lambda_powertools import Logger

from app.config import settings

# Standard output carries CSV/JSON artifacts, so logs go to stderr.
logger = Logger(service=settings.service_name, level=settings.log_level, stream=sys.stderr)


def record_timing(operation: str, duration_ms: float, **fields) -> None:
    """Log the duration of a finished operation with its domain fields."""
    logger.info(
        f"{operation} finished",
        extra={"operation": operation, "duration_ms": round(duration_ms, 3), **fields},
    )


@contextmanager
def timed(operation: str, **fields) -> Iterator[dict]:
    """Time a block; extra fields added to the yielded dict are logged too."""
    extra: dict = dict(fields)
    start = time.perf_counter()
    try:
        yield extra
    finally:
        record_timing(operation, (time.perf_counter() - start) * 1000, **extra)
