"""
Check guarding for weylfree
Decorators that turn library failures into failed check records and time
the wrapped computation
"""

import functools
import logging
import time
from typing import Callable, TypeVar

from src.monitoring.monitoring import get_monitoring
from src.utils.errors import VerificationFailedError, WeylfreeError
from src.workflows.report import CheckResult

logger = logging.getLogger('resilience')

T = TypeVar('T')


def checked(name: str) -> Callable[[Callable[..., CheckResult]], Callable[..., CheckResult]]:
    """
    Guard a check function so library errors become failed CheckResults

    The wrapped function returns a CheckResult. A WeylfreeError raised inside
    it is converted into a failed result carrying the error text and, for
    verification failures, the witness. Other exceptions propagate.

    Args:
        name: Check name used for the converted result

    Returns:
        Decorator function
    """
    def decorator(func: Callable[..., CheckResult]) -> Callable[..., CheckResult]:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> CheckResult:
            try:
                return func(*args, **kwargs)
            except WeylfreeError as e:
                witness = e.witness if isinstance(e, VerificationFailedError) else None
                logger.warning(f"Check {name} failed: {e}")
                get_monitoring().increment_counter("checks_failed", tags={"check": name})
                return CheckResult.of(name, False, detail=f"{type(e).__name__}: {e}",
                                      witness=witness if witness is not None else {"error": str(e)})
        return wrapper
    return decorator


def timed(name: str) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """
    Record the duration of each call as a timer metric

    Args:
        name: Name of the timer metric

    Returns:
        Decorator function
    """
    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> T:
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                duration = time.perf_counter() - start_time
                get_monitoring().record_timer(name, duration)
                logger.debug(f"{name} took {duration:.3f}s")
        return wrapper
    return decorator
