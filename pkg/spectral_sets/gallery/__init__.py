"""Explicit examples and counterexamples with their checkable claims."""

from typing import Any, Callable, Dict, List

from spectral_sets.exceptions import ValidationError
from spectral_sets.gallery.base import ClaimOutcome, GalleryItem
from spectral_sets.gallery.douglas_paulsen import DouglasPaulsenDomain, douglas_paulsen_domain
from spectral_sets.gallery.families import (
    DerivativeZeroFamily,
    EigenvectorAngleExample,
    derivative_zero_family,
    eigenvector_angle_example,
)
from spectral_sets.gallery.mascioni import MascioniPair, mascioni_pair
from spectral_sets.gallery.three_disk import ThreeDiskAdmissible, three_disk_admissible

# Items at their default parameters, keyed by CLI name
REGISTRY: Dict[str, Callable[[], GalleryItem]] = {
    MascioniPair.name: lambda: mascioni_pair(4.0),
    DerivativeZeroFamily.name: lambda: derivative_zero_family(0.2 + 0.1j, 10.0),
    EigenvectorAngleExample.name: lambda: eigenvector_angle_example(0.0, 1.0, 0.01),
    ThreeDiskAdmissible.name: lambda: three_disk_admissible(0.05),
    DouglasPaulsenDomain.name: lambda: douglas_paulsen_domain(1.0, [(0j, 0.5)]),
}


def list_items() -> List[Dict[str, str]]:
    """Names and claims of the registered items."""
    return [{"name": name, "claim": build().claim} for name, build in sorted(REGISTRY.items())]


def get_item(name: str) -> GalleryItem:
    """Build a registered item at its default parameters.

    Raises:
        ValidationError: If the name is unknown
    """
    try:
        return REGISTRY[name]()
    except KeyError:
        raise ValidationError(
            f"Unknown gallery item {name!r}; choose from {sorted(REGISTRY)}"
        ) from None


def run_item(name: str) -> Dict[str, Any]:
    """Check a registered item and return its report."""
    return get_item(name).to_dict()


__all__ = [
    "ClaimOutcome",
    "GalleryItem",
    "MascioniPair",
    "DerivativeZeroFamily",
    "EigenvectorAngleExample",
    "ThreeDiskAdmissible",
    "DouglasPaulsenDomain",
    "mascioni_pair",
    "derivative_zero_family",
    "eigenvector_angle_example",
    "three_disk_admissible",
    "douglas_paulsen_domain",
    "REGISTRY",
    "list_items",
    "get_item",
    "run_item",
]
