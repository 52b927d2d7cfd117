"""Operator-versus-region tests.

Every universally quantified criterion is evaluated on a finite grid and
reported with its signed margin (the smallest slack found) and the grid
point attaining it.
"""

import logging
import math
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.polynomial.polynomial as P
import scipy.linalg
from pydantic import BaseModel, Field, field_validator

from spectral_sets.exceptions import DomainError, ValidationError
from spectral_sets.geometry import (
    ClosedDisk,
    DiskIntersection,
    ExteriorDisk,
    GeneralizedDisk,
    HalfPlane,
    PiecewiseCircularDomain,
)
from spectral_sets.matcalc import (
    ExtendedComplex,
    ScalarRational,
    as_matrix,
    encode_complex,
    eval_on_matrix,
    hermitian_part,
    opnorm,
    resolvent,
    spectrum,
)

logger = logging.getLogger(__name__)

# Tolerance is DEFAULT_ABS_TOL + DEFAULT_REL_TOL * ||T|| unless given explicitly
DEFAULT_ABS_TOL = 1e-9
DEFAULT_REL_TOL = 1e-9

DEFAULT_RANGE_ANGLES = 256

Verdict = Union[bool, Literal["boundary"]]


def default_tolerance(T: np.ndarray) -> float:
    """Absolute-plus-relative tolerance used when none is given."""
    return DEFAULT_ABS_TOL + DEFAULT_REL_TOL * opnorm(T)


class ClassifyReport(BaseModel):
    """Verdict of a sampled criterion.

    ``verdict`` is ``"boundary"`` when the margin is within the tolerance of
    zero; ``passed`` accepts boundary cases.
    """

    verdict: Verdict
    margin: float
    witness: Dict[str, Any] = Field(default_factory=dict)
    grid: Dict[str, Any] = Field(default_factory=dict)
    tolerance: float

    @classmethod
    def from_margin(
        cls,
        margin: float,
        tolerance: float,
        witness: Optional[Dict[str, Any]] = None,
        grid: Optional[Dict[str, Any]] = None,
    ) -> "ClassifyReport":
        margin = float(margin)
        verdict: Verdict = "boundary" if abs(margin) <= tolerance else margin > 0
        return cls(
            verdict=verdict,
            margin=margin,
            witness=witness or {},
            grid=grid or {},
            tolerance=tolerance,
        )

    @property
    def passed(self) -> bool:
        return self.margin >= -self.tolerance


def _min_eigenvalue(H: np.ndarray) -> float:
    return float(scipy.linalg.eigh(hermitian_part(H), eigvals_only=True)[0])


def _max_eigenvalue(H: np.ndarray) -> float:
    return float(scipy.linalg.eigh(hermitian_part(H), eigvals_only=True)[-1])


def is_good_disk(
    T: object, D: GeneralizedDisk, tol: Optional[float] = None
) -> ClassifyReport:
    """Test whether D is a good disk for T.

    ClosedDisk(a, r): ||T - a|| <= r. ExteriorDisk(a, r): ||(T - a)^{-1}|| <= 1/r.
    HalfPlane(a, alpha): Re(alpha (T - a)) >= 0.

    Raises:
        SingularityError: For an exterior disk whose center is an eigenvalue
    """
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    n = T.shape[0]

    if isinstance(D, ClosedDisk):
        norm = opnorm(T - D.center * np.eye(n))
        margin = D.radius - norm
        witness = {"norm": norm}
    elif isinstance(D, ExteriorDisk):
        norm = opnorm(resolvent(T, D.center))
        margin = 1.0 / D.radius - norm
        witness = {"resolvent_norm": norm}
    elif isinstance(D, HalfPlane):
        margin = _min_eigenvalue(D.direction * (T - D.anchor * np.eye(n)))
        witness = {"min_real_part": margin}
    else:
        raise ValidationError(f"Unsupported disk type {type(D).__name__}")

    witness["disk"] = D.to_dict()
    return ClassifyReport.from_margin(margin, tol, witness)


def numerical_range_boundary(T: object, n_angles: int = DEFAULT_RANGE_ANGLES) -> np.ndarray:
    """Sample the boundary of the numerical range W(T).

    For each angle theta the top eigenvector x of Re(e^{-i theta} T) gives the
    support point <Tx, x>.

    Args:
        T: Square matrix
        n_angles: Number of uniformly spaced angles (at least 8)

    Returns:
        Complex array of boundary points, one per angle
    """
    if n_angles < 8:
        raise ValidationError(f"Numerical range needs at least 8 angles, got {n_angles}")
    T = as_matrix(T)
    points = np.empty(n_angles, dtype=complex)
    for k, theta in enumerate(2.0 * np.pi * np.arange(n_angles) / n_angles):
        _, vecs = scipy.linalg.eigh(hermitian_part(np.exp(-1j * theta) * T))
        x = vecs[:, -1]
        points[k] = np.vdot(x, T @ x)
    return points


def _support_function(D: ClosedDisk, theta: np.ndarray) -> np.ndarray:
    return (np.exp(-1j * theta) * D.center).real + D.radius


def w_contained_in(
    T: object,
    region: Union[GeneralizedDisk, DiskIntersection],
    n_angles: int = DEFAULT_RANGE_ANGLES,
    tol: Optional[float] = None,
) -> ClassifyReport:
    """Test W(T) inside a convex region by comparing support functions.

    Closed disks are compared on the angle grid; a half-plane has a single
    finite support direction and is checked there exactly.

    Raises:
        DomainError: If the region is not convex (contains an exterior disk)
    """
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    disks = region.disks if isinstance(region, DiskIntersection) else [region]
    n = T.shape[0]

    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    margin = math.inf
    witness: Dict[str, Any] = {}
    support_of_t: Optional[np.ndarray] = None
    for index, disk in enumerate(disks):
        if isinstance(disk, ExteriorDisk):
            raise DomainError("Numerical range containment needs a convex target region")
        if isinstance(disk, HalfPlane):
            slack = _min_eigenvalue(disk.direction * (T - disk.anchor * np.eye(n)))
            if slack < margin:
                margin = slack
                witness = {"disk": index, "direction": encode_complex(-disk.direction.conjugate())}
            continue
        if support_of_t is None:
            support_of_t = np.array(
                [_max_eigenvalue(np.exp(-1j * t) * T) for t in thetas]
            )
        slacks = _support_function(disk, thetas) - support_of_t
        k = int(np.argmin(slacks))
        if slacks[k] < margin:
            margin = float(slacks[k])
            witness = {"disk": index, "theta": float(thetas[k])}

    return ClassifyReport.from_margin(margin, tol, witness, {"angles": n_angles})


def poisson_kernel(T: object, r: float, t: float) -> np.ndarray:
    """K_{r,t}(T) = (I - r e^{it} T*)^{-1} + (I - r e^{-it} T)^{-1} - I.

    The first term is the adjoint of the second, so the result is formed as
    X + X* - I and is Hermitian by construction.

    Raises:
        ValidationError: If r is not in (0, 1)
        SingularityError: If I - r e^{-it} T is singular
    """
    if not 0 < r < 1:
        raise ValidationError(f"Poisson radius must lie in (0, 1), got {r}")
    T = as_matrix(T)
    n = T.shape[0]
    z = r * np.exp(-1j * t)
    # I - zT = -z (T - I/z)
    X = -resolvent(T, 1.0 / z) / z
    return X + X.conj().T - np.eye(n)


class RhoGrid(BaseModel):
    """Sampling grid for the rho-contraction criteria."""

    radii: List[float]
    angles: List[float]
    tangency_angles: List[float]
    mu_moduli: int = 128

    @field_validator("radii")
    @classmethod
    def _radii_inside(cls, value: List[float]) -> List[float]:
        if not value or any(not 0 < r < 1 for r in value):
            raise ValueError("radii must be a non-empty list inside (0, 1)")
        return value

    @field_validator("angles", "tangency_angles")
    @classmethod
    def _angles_nonempty(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("angle lists must be non-empty")
        return value

    @field_validator("mu_moduli")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("mu_moduli must be positive")
        return value

    @classmethod
    def default(
        cls, radii: int = 64, angles: int = 256, tangency: int = 256, mu_moduli: int = 128
    ) -> "RhoGrid":
        """Radii accumulating at 1, uniform angles and tangency points."""
        return cls(
            radii=list(1.0 - np.geomspace(0.99, 1e-6, radii)),
            angles=list(2.0 * np.pi * np.arange(angles) / angles),
            tangency_angles=list(2.0 * np.pi * np.arange(tangency) / tangency),
            mu_moduli=mu_moduli,
        )

    @property
    def tangency_points(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.tangency_angles))

    def summary(self) -> Dict[str, int]:
        return {
            "radii": len(self.radii),
            "angles": len(self.angles),
            "tangency_points": len(self.tangency_angles),
            "mu_moduli": self.mu_moduli,
        }


def _spectral_report(T: np.ndarray, tol: float, grid: Dict[str, Any]) -> Optional[ClassifyReport]:
    eigenvalues = spectrum(T)
    k = int(np.argmax(np.abs(eigenvalues)))
    radius = float(abs(eigenvalues[k]))
    if radius <= 1.0 + tol:
        return None
    return ClassifyReport.from_margin(
        1.0 - radius, tol, {"eigenvalue": encode_complex(eigenvalues[k])}, grid
    )


def _check_rho(rho: float) -> None:
    if not rho >= 1:
        raise ValidationError(f"rho must be at least 1, got {rho}")


def is_rho_contraction_poisson(
    T: object, rho: float, grid: Optional[RhoGrid] = None, tol: Optional[float] = None
) -> ClassifyReport:
    """Test K_{r,t}(T) + (rho - 1) I >= 0 over the grid.

    The spectrum is checked against the closed unit disk first.
    """
    _check_rho(rho)
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    grid = grid or RhoGrid.default()
    summary = grid.summary()

    failed = _spectral_report(T, tol, summary)
    if failed is not None:
        return failed

    n = T.shape[0]
    identity = np.eye(n, dtype=complex)
    angles = np.asarray(grid.angles)
    margin = math.inf
    witness: Dict[str, Any] = {}
    for r in grid.radii:
        z = r * np.exp(-1j * angles)
        X = np.linalg.inv(identity - z[:, None, None] * T)
        K = X + np.conj(np.swapaxes(X, -1, -2)) - identity
        mins = np.linalg.eigvalsh(K)[:, 0] + (rho - 1.0)
        k = int(np.argmin(mins))
        if mins[k] < margin:
            margin = float(mins[k])
            witness = {"r": float(r), "t": float(angles[k])}

    logger.debug(f"Poisson route rho={rho}: margin {margin:.3e}")
    return ClassifyReport.from_margin(margin, tol, witness, summary)


def _contraction_report(T: np.ndarray, tol: float) -> ClassifyReport:
    norm = opnorm(T)
    return ClassifyReport.from_margin(1.0 - norm, tol, {"norm": norm}, {"route": "contraction"})


def is_rho_contraction_disks(
    T: object, rho: float, grid: Optional[RhoGrid] = None, tol: Optional[float] = None
) -> ClassifyReport:
    """Test the tangent-disk norm and resolvent inequalities.

    1 < rho < 2: 1 - ||mu - T|| / (|mu| + 1) >= 0 for |mu| >= (rho-1)/(2-rho),
    truncated at ten times that modulus plus 10, with the limiting half-plane
    inequality for |mu| -> infinity. rho = 2: W(T) inside the closed unit
    disk. rho > 2: 1 - (|mu| - 1) ||(mu - T)^{-1}|| >= 0 for
    1 < |mu| <= (rho-1)/(rho-2). rho = 1: ||T|| <= 1.
    """
    _check_rho(rho)
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    grid = grid or RhoGrid.default()
    summary = grid.summary()

    if rho == 1:
        return _contraction_report(T, tol)

    failed = _spectral_report(T, tol, summary)
    if failed is not None:
        return failed

    if abs(rho - 2.0) <= 1e-12:
        report = w_contained_in(T, ClosedDisk(0.0, 1.0), len(grid.angles), tol)
        report.grid = {**summary, "route": "numerical_range"}
        return report

    n = T.shape[0]
    identity = np.eye(n, dtype=complex)
    directions = grid.tangency_points
    margin = math.inf
    witness: Dict[str, Any] = {}

    if rho < 2:
        m0 = (rho - 1.0) / (2.0 - rho)
        moduli = np.geomspace(m0, 10.0 * m0 + 10.0, grid.mu_moduli)
        for m in moduli:
            mus = m * directions
            norms = np.linalg.norm(mus[:, None, None] * identity - T, ord=2, axis=(1, 2))
            slacks = 1.0 - norms / (m + 1.0)
            k = int(np.argmin(slacks))
            if slacks[k] < margin:
                margin = float(slacks[k])
                witness = {"mu": encode_complex(mus[k])}
        for phi, direction in zip(grid.tangency_angles, directions):
            slack = 1.0 - _max_eigenvalue(-np.conj(direction) * T)
            if slack < margin:
                margin = slack
                witness = {"mu_direction": float(phi), "asymptotic": True}
        summary = {**summary, "route": "disks", "mu_max": float(moduli[-1])}
    else:
        upper = (rho - 1.0) / (rho - 2.0)
        moduli = 1.0 + (upper - 1.0) * np.geomspace(1e-4, 1.0, grid.mu_moduli)
        for m in moduli:
            mus = m * directions
            inverses = np.linalg.inv(mus[:, None, None] * identity - T)
            norms = np.linalg.norm(inverses, ord=2, axis=(1, 2))
            slacks = 1.0 - (m - 1.0) * norms
            k = int(np.argmin(slacks))
            if slacks[k] < margin:
                margin = float(slacks[k])
                witness = {"mu": encode_complex(mus[k])}
        summary = {**summary, "route": "resolvent_disks", "mu_max": float(upper)}

    logger.debug(f"Disk route rho={rho}: margin {margin:.3e}")
    return ClassifyReport.from_margin(margin, tol, witness, summary)


def d_a_rho(a: complex, rho: float) -> GeneralizedDisk:
    """Tangent region D_a(rho) touching the unit circle at a.

    1 < rho < 2: closed disk of radius 1 + m containing the unit disk,
    m = (rho-1)/(2-rho). rho = 2: half-plane Re(conj(a) z) <= 1. rho > 2:
    closed exterior of the disk of radius s = 1/(rho-2) centered at a(1+s).
    """
    a = complex(a)
    if abs(abs(a) - 1.0) > 1e-12:
        raise ValidationError(f"Tangency point must be unimodular, got |a| = {abs(a)}")
    if not rho > 1:
        raise ValidationError(f"rho must exceed 1, got {rho}")
    if abs(rho - 2.0) <= 1e-12:
        return HalfPlane(a, -a.conjugate())
    if rho < 2:
        m = (rho - 1.0) / (2.0 - rho)
        return ClosedDisk(-a * m, 1.0 + m)
    s = 1.0 / (rho - 2.0)
    return ExteriorDisk(a * (1.0 + s), s)


def _sweep(
    T: np.ndarray, disks: Sequence[Tuple[float, GeneralizedDisk]], tol: float, grid: Dict[str, Any]
) -> ClassifyReport:
    margin = math.inf
    witness: Dict[str, Any] = {}
    for angle, disk in disks:
        report = is_good_disk(T, disk, tol)
        if report.margin < margin:
            margin = report.margin
            witness = {"tangency_angle": angle, "disk": disk.to_dict()}
    return ClassifyReport.from_margin(margin, tol, witness, grid)


def is_rho_contraction_mobius(
    T: object, rho: float, grid: Optional[RhoGrid] = None, tol: Optional[float] = None
) -> ClassifyReport:
    """Test that every tangent region D_a(rho) is a good disk for T."""
    _check_rho(rho)
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    grid = grid or RhoGrid.default()
    if rho == 1:
        return _contraction_report(T, tol)
    failed = _spectral_report(T, tol, grid.summary())
    if failed is not None:
        return failed
    disks = [(phi, d_a_rho(a, rho)) for phi, a in zip(grid.tangency_angles, grid.tangency_points)]
    return _sweep(T, disks, tol, {**grid.summary(), "route": "mobius"})


def tangent_halfplane_sweep(
    T: object, grid: Optional[RhoGrid] = None, tol: Optional[float] = None
) -> ClassifyReport:
    """rho = 2 through the tangent half-planes Re(conj(a) z) <= 1."""
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    grid = grid or RhoGrid.default()
    disks = [(phi, d_a_rho(a, 2.0)) for phi, a in zip(grid.tangency_angles, grid.tangency_points)]
    return _sweep(T, disks, tol, {"tangency_points": len(disks), "route": "halfplanes"})


def disk_collection_test(
    T: object, disks: Sequence[GeneralizedDisk], tol: Optional[float] = None
) -> ClassifyReport:
    """Worst goodness margin over a finite collection of generalized disks."""
    if not disks:
        raise ValidationError("Disk collection must be non-empty")
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    margins = [is_good_disk(T, d, tol).margin for d in disks]
    k = int(np.argmin(margins))
    return ClassifyReport.from_margin(
        margins[k], tol, {"disk": k, "margins": margins}, {"disks": len(disks)}
    )


def lemniscate_test(
    T: object, p: ScalarRational, R: float, tol: Optional[float] = None
) -> ClassifyReport:
    """Test ||p(T)|| <= R for the lemniscate {|p| <= R}.

    Raises:
        ValidationError: If p has finite poles or R is not positive
        DomainError: If a critical point of p lies on the level curve |p| = R
    """
    if p.poles:
        raise ValidationError("Lemniscate function must be a polynomial")
    if not R > 0:
        raise ValidationError(f"Level must be positive, got {R}")
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol

    coeffs, _ = p.as_polynomials()
    critical = P.polyroots(P.polyder(coeffs)) if len(coeffs) > 2 else np.array([])
    for c in critical:
        if abs(abs(P.polyval(c, coeffs)) - R) <= 1e-9 * R:
            raise DomainError(f"Critical point {c} lies on the level curve |p| = {R}")

    norm = opnorm(eval_on_matrix(p, T))
    return ClassifyReport.from_margin(
        1.0 - norm / R,
        tol,
        {"norm": norm, "critical_points": [encode_complex(c) for c in critical]},
    )


class ArcSlack(BaseModel):
    """Resolvent slacks 1/R - ||(T - mu)^{-1}|| on one arc."""

    arc: int
    radius: float
    passed: bool
    min_slack: float
    worst_point: List[float]
    slacks: List[float]


class HypothesisReport(BaseModel):
    """Per-arc resolvent bounds plus spectral inclusion."""

    passed: bool
    spectral_inclusion: bool
    outside_eigenvalues: List[List[float]] = Field(default_factory=list)
    arcs: List[ArcSlack]
    tolerance: float


def theorem2_hypotheses(
    T: object, domain: PiecewiseCircularDomain, tol: Optional[float] = None
) -> HypothesisReport:
    """Check ||(T - mu_k(lambda))^{-1}|| <= 1/R_k on every sampled center.

    Raises:
        DomainError: If an arc has no exterior data
        SingularityError: If a sampled center is an eigenvalue of T
    """
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol

    arcs: List[ArcSlack] = []
    for k in range(len(domain.arcs)):
        data = domain.exterior.get(k)
        if data is None:
            raise DomainError(f"Arc {k} has no exterior data")
        slacks = [1.0 / data.radius - opnorm(resolvent(T, mu)) for _, mu in data.centers]
        worst = int(np.argmin(slacks))
        lam, mu = data.centers[worst]
        arcs.append(
            ArcSlack(
                arc=k,
                radius=data.radius,
                passed=min(slacks) >= -tol,
                min_slack=min(slacks),
                worst_point=[lam.real, lam.imag, mu.real, mu.imag],
                slacks=slacks,
            )
        )

    outside = [e for e in spectrum(T) if not domain.contains(e)]
    inclusion = not outside
    return HypothesisReport(
        passed=inclusion and all(a.passed for a in arcs),
        spectral_inclusion=inclusion,
        outside_eigenvalues=[[e.real, e.imag] for e in outside],
        arcs=arcs,
        tolerance=tol,
    )


def is_hyponormal(T: object, tol: Optional[float] = None) -> ClassifyReport:
    """Test T*T - TT* >= 0."""
    T = as_matrix(T)
    tol = default_tolerance(T) if tol is None else tol
    defect = T.conj().T @ T - T @ T.conj().T
    eigenvalues = scipy.linalg.eigh(hermitian_part(defect), eigvals_only=True)
    return ClassifyReport.from_margin(
        float(eigenvalues[0]), tol, {"defect_eigenvalues": [float(e) for e in eigenvalues]}
    )


def hyponormal_resolvent_identity(T: object, lam: ExtendedComplex) -> Tuple[float, float]:
    """Return (||(T - lam)^{-1}||, 1/dist(lam, sigma(T))).

    The two agree for hyponormal T.

    Raises:
        SingularityError: If lam is an eigenvalue
    """
    T = as_matrix(T)
    lhs = opnorm(resolvent(T, lam))
    rhs = 1.0 / float(np.min(np.abs(spectrum(T) - complex(lam))))
    return lhs, rhs
