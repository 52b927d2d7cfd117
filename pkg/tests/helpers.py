"""Shared helpers for randomized test cases."""

import numpy as np


def random_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Complex Gaussian n x n matrix."""
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_contraction(rng: np.random.Generator, n: int, norm: float = 1.0) -> np.ndarray:
    """Random matrix scaled to operator norm ``norm``."""
    A = random_matrix(rng, n)
    return norm * A / np.linalg.norm(A, 2)


def random_zeros(rng: np.random.Generator, m: int, radius: float = 0.8, separation: float = 0.05) -> tuple:
    """``m`` points of modulus at most ``radius`` with pairwise distance at least ``separation``."""
    while True:
        pts = np.sqrt(rng.uniform(0.0, radius**2, m)) * np.exp(2j * np.pi * rng.uniform(size=m))
        gaps = np.abs(pts[:, None] - pts[None, :]) + np.eye(m)
        if m == 1 or gaps.min() >= separation:
            return tuple(complex(p) for p in pts)


def random_coeffs(rng: np.random.Generator, degree: int) -> np.ndarray:
    """Complex Gaussian coefficients of a polynomial of the given degree."""
    return rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
