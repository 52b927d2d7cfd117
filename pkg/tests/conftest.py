"""Pytest configuration and fixtures."""

import json
import logging
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pytest

from spectral_sets.geometry import ClosedDisk, DiskIntersection, ExteriorDisk
from spectral_sets.logging_config import set_log_level

# Configure logging for tests
logging.basicConfig(level=logging.INFO)
set_log_level(logging.INFO)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized cases."""
    return np.random.default_rng(20240601)


@pytest.fixture
def nilpotent() -> Callable[[float], np.ndarray]:
    """Factory for [[0, a], [0, 0]]."""

    def build(a: float) -> np.ndarray:
        return np.array([[0.0, a], [0.0, 0.0]], dtype=complex)

    return build


@pytest.fixture
def unit_disk() -> ClosedDisk:
    """Closed unit disk."""
    return ClosedDisk(0j, 1.0)


@pytest.fixture
def annulus() -> DiskIntersection:
    """{1/2 <= |z| <= 1}."""
    return DiskIntersection([ClosedDisk(0j, 1.0), ExteriorDisk(0j, 0.5)])


@pytest.fixture
def lens() -> DiskIntersection:
    """Intersection of the unit disks centered at -1/2 and 1/2."""
    return DiskIntersection([ClosedDisk(-0.5 + 0j, 1.0), ClosedDisk(0.5 + 0j, 1.0)])


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a JSON document into the test's temporary directory."""

    def write(name: str, data: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return path

    return write
