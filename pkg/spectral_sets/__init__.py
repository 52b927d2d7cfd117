"""Spectral-set and K-spectral-set computations on small complex matrices."""

__version__ = "0.1.0"

from spectral_sets.blaschke import BlaschkeProduct, blaschke_on_matrix, similarity_transform
from spectral_sets.classify import (
    ClassifyReport,
    RhoGrid,
    is_good_disk,
    is_rho_contraction_disks,
    is_rho_contraction_mobius,
    is_rho_contraction_poisson,
    numerical_range_boundary,
)
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
from spectral_sets.geometry import (
    CircularArc,
    ClosedDisk,
    DiskIntersection,
    ExteriorDisk,
    GeneralizedDisk,
    HalfPlane,
    MobiusMap,
    PiecewiseCircularDomain,
)
from spectral_sets.ksearch import SearchConfig, k_lower_bound, vn_ratio
from spectral_sets.logging_config import set_log_level
from spectral_sets.matcalc import MatrixRational, ScalarRational, eval_on_matrix

__all__ = [
    "BlaschkeProduct",
    "blaschke_on_matrix",
    "similarity_transform",
    "ClassifyReport",
    "RhoGrid",
    "is_good_disk",
    "is_rho_contraction_disks",
    "is_rho_contraction_mobius",
    "is_rho_contraction_poisson",
    "numerical_range_boundary",
    "SpectralSetsError",
    "ValidationError",
    "NumericalError",
    "SingularityError",
    "PoleOnSpectrumError",
    "ContourError",
    "PreconditionError",
    "DomainError",
    "UnboundedBoundaryError",
    "DegenerateMapError",
    "CircularArc",
    "ClosedDisk",
    "ExteriorDisk",
    "HalfPlane",
    "GeneralizedDisk",
    "DiskIntersection",
    "MobiusMap",
    "PiecewiseCircularDomain",
    "SearchConfig",
    "k_lower_bound",
    "vn_ratio",
    "MatrixRational",
    "ScalarRational",
    "eval_on_matrix",
    "set_log_level",
]
