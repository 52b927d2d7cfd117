"""Adaptive refinement utilities for quadrature-based evaluations."""

import logging
from functools import wraps
from typing import Any, Callable, Optional, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")


def refine_by_doubling(
    initial_points: int = 512,
    max_points: int = 8192,
    growth: int = 2,
    tol: float = 1e-9,
) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Decorator to re-run a quadrature with growing resolution until it settles.

    The wrapped function must accept the number of quadrature points as its
    first positional argument and return an array-like result. Successive
    results are compared in the max-abs norm.

    Args:
        initial_points: Point count of the first attempt
        max_points: Largest point count attempted
        growth: Factor by which the point count grows between attempts
        tol: Absolute difference below which two attempts count as converged

    Returns:
        Decorated function taking the remaining arguments of the wrapped one
    """
    if growth < 2:
        raise ValueError("growth must be at least 2")

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            points = initial_points
            previous: Optional[T] = None

            while True:
                current = func(points, *args, **kwargs)
                if previous is not None:
                    change = float(
                        np.max(np.abs(np.asarray(current) - np.asarray(previous)))
                    )
                    logger.debug(f"Quadrature with {points} points: change {change:.3e}")
                    if change < tol:
                        return current
                if points * growth > max_points:
                    if previous is not None:
                        logger.warning(
                            f"Quadrature did not settle below {tol:.1e} "
                            f"by {points} points. Returning last result."
                        )
                    return current
                previous = current
                points *= growth

        return wrapper

    return decorator
