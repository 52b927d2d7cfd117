"""Custom exceptions for the spectral-sets toolkit."""

from typing import Any, Dict, List, Optional


class SpectralSetsError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = 3,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize the exception.

        Args:
            message: Error message
            exit_code: Process exit code the CLI reports for this error
            details: Structured context for reports, if available
        """
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}


class ValidationError(SpectralSetsError):
    """Raised when an input violates a schema or type invariant."""

    def __init__(
        self,
        message: str = "Validation error",
        errors: Optional[List[str]] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize validation error.

        Args:
            message: Error message
            errors: List of individual violations
            details: Structured context, if available
        """
        super().__init__(message, exit_code=2, details=details)
        self.errors = errors or []


class NumericalError(SpectralSetsError):
    """Raised when a computation cannot be carried out reliably."""

    def __init__(
        self,
        message: str = "Numerical failure",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize numerical error."""
        super().__init__(message, exit_code=3, details=details)


class SingularityError(NumericalError):
    """Raised when an operator is (numerically) singular at a requested point."""

    def __init__(
        self,
        message: str = "Singular evaluation point",
        point: Optional[complex] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize singularity error.

        Args:
            message: Error message
            point: The offending point (eigenvalue or pole), if known
            details: Structured context, if available
        """
        super().__init__(message, details=details)
        self.point = point


class PoleOnSpectrumError(SingularityError):
    """Raised when a pole of a function lies on the spectrum of an operator."""


class ContourError(NumericalError):
    """Raised when a quadrature contour is incompatible with the integrand."""


class PreconditionError(SpectralSetsError):
    """Raised when a mathematical precondition of an operation fails."""

    def __init__(
        self,
        message: str = "Precondition failed",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize precondition error."""
        super().__init__(message, exit_code=3, details=details)


class DomainError(PreconditionError):
    """Raised when a domain or boundary point does not meet a requirement."""


class UnboundedBoundaryError(DomainError):
    """Raised when a bounded boundary is required but the boundary reaches infinity."""


class DegenerateMapError(PreconditionError):
    """Raised when a Mobius map has (numerically) vanishing determinant."""
