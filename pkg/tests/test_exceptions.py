"""Tests for exception classes."""

import pytest

from spectral_sets.exceptions import (
    ContourError,
    DegenerateMapError,
    DomainError,
    NumericalError,
    PoleOnSpectrumError,
    PreconditionError,
    SingularityError,
    SpectralSetsError,
    UnboundedBoundaryError,
    ValidationError,
)


def test_spectral_sets_error():
    """Test SpectralSetsError."""
    error = SpectralSetsError("Test error", exit_code=4, details={"key": "value"})
    assert str(error) == "Test error"
    assert error.message == "Test error"
    assert error.exit_code == 4
    assert error.details == {"key": "value"}


def test_spectral_sets_error_defaults():
    """Test SpectralSetsError defaults."""
    error = SpectralSetsError("Test error")
    assert error.exit_code == 3
    assert error.details == {}


def test_validation_error():
    """Test ValidationError."""
    errors = ["m.json:3: entries[1][0]: not finite"]
    error = ValidationError("Validation failed", errors=errors)
    assert str(error) == "Validation failed"
    assert error.exit_code == 2
    assert error.errors == errors


def test_validation_error_defaults():
    """Test ValidationError without explicit errors."""
    error = ValidationError()
    assert error.message == "Validation error"
    assert error.errors == []


def test_singularity_error():
    """Test SingularityError carries the offending point."""
    error = SingularityError("Singular", point=1 + 2j)
    assert error.point == 1 + 2j
    assert error.exit_code == 3
    assert isinstance(error, NumericalError)


def test_pole_on_spectrum_error():
    """Test PoleOnSpectrumError is a SingularityError."""
    error = PoleOnSpectrumError("Pole 0 on the spectrum", point=0j)
    assert isinstance(error, SingularityError)
    assert error.point == 0j


@pytest.mark.parametrize(
    "cls, parent",
    [
        (ContourError, NumericalError),
        (DomainError, PreconditionError),
        (UnboundedBoundaryError, DomainError),
        (DegenerateMapError, PreconditionError),
    ],
)
def test_hierarchy(cls, parent):
    """Test exception hierarchy and exit codes."""
    error = cls("failed")
    assert isinstance(error, parent)
    assert isinstance(error, SpectralSetsError)
    assert error.exit_code == 3
