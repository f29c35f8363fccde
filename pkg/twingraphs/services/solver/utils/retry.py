"""Retry utilities for damped fixed-point iterations."""

import logging
from functools import wraps
from typing import Any, Callable, TypeVar

from ....exceptions.exceptions import is_retryable_error

logger = logging.getLogger(__name__)

T = TypeVar('T')


def retry_with_damping(max_retries: int = 3, backoff: float = 0.5, min_damping: float = 1e-3):
    """
    Decorator re-running an iteration with stronger damping after a retryable failure.

    The wrapped callable must accept a `damping` keyword argument.

    Args:
        max_retries: Maximum number of retries before giving up
        backoff: Factor applied to the damping on every retry
        min_damping: Smallest damping worth trying
    """
    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args: Any, damping: float = 1.0, **kwargs: Any) -> T:
            last_exception = None

            for attempt in range(max_retries + 1):
                try:
                    return func(*args, damping=damping, **kwargs)
                except Exception as e:
                    last_exception = e

                    next_damping = damping * backoff
                    if not is_retryable_error(e) or attempt == max_retries or next_damping < min_damping:
                        raise

                    logger.warning(
                        f"Attempt {attempt + 1}/{max_retries + 1} failed with error: {str(e)}. "
                        f"Retrying with damping {next_damping:.3g}..."
                    )
                    damping = next_damping

            raise last_exception

        return wrapper
    return decorator
