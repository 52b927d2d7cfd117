"""Riemann-sphere disks, piecewise-circular domains and geometric predicates.

A generalized disk is stored together with its Hermitian form
H = [[A, B], [conj(B), C]]; the region is {z : A|z|^2 + 2 Re(conj(z) B) + C <= 0}.
Mobius maps act on the form by congruence, which is how images are computed.
"""

import cmath
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from spectral_sets.exceptions import (
    DegenerateMapError,
    DomainError,
    UnboundedBoundaryError,
    ValidationError,
)
from spectral_sets.matcalc import (
    INFINITY,
    ExtendedComplex,
    ScalarRational,
    encode_complex,
    eval_on_matrix,
    is_infinity,
)

logger = logging.getLogger(__name__)

# Default membership tolerance for boundary points
BOUNDARY_TOL = 1e-9

# Maximum allowed gap between consecutive arc endpoints
CHAIN_TOL = 1e-9

# Determinant floor for Mobius maps
MOBIUS_DET_TOL = 1e-12

UNIT_DIRECTION_TOL = 1e-12

# Aperture grid (sectors of aperture 2*pi/m) and S0 placements for transversality
DEFAULT_APERTURE_GRID: Tuple[int, ...] = (6, 8, 12, 16, 24, 32, 64)
SECTOR_PLACEMENTS = 720
_DIRECTION_SAMPLES = SECTOR_PLACEMENTS * 8

DEFAULT_EXTERIOR_SAMPLES = 64
DEFAULT_MAX_ARC_ANGLE = math.pi / 6

DomainLike = Union["GeneralizedDisk", "Domain"]


def _wrap_angle(theta: float) -> float:
    return theta % (2.0 * math.pi)


def _circular_gap(a: float, b: float) -> float:
    """Distance between two directions on the circle of angles."""
    d = abs(_wrap_angle(a) - _wrap_angle(b))
    return min(d, 2.0 * math.pi - d)


class GeneralizedDisk(ABC):
    """Closed disk, closed exterior of a disk or closed half-plane."""

    kind: str = ""

    @abstractmethod
    def hermitian_form(self) -> np.ndarray:
        """2x2 Hermitian matrix H with region {v* H v <= 0}, v = (z, 1)."""

    @abstractmethod
    def contains_array(self, z: np.ndarray, tol: float = 0.0) -> np.ndarray:
        """Vectorized membership for finite points."""

    @abstractmethod
    def contains_infinity(self) -> bool:
        """Whether the point at infinity belongs to the region."""

    @abstractmethod
    def boundary_residual(self, z: complex) -> float:
        """Distance-like residual of ``z`` from the boundary curve."""

    @abstractmethod
    def boundary_sample(self, n: int) -> np.ndarray:
        """n finite points on the boundary curve."""

    @abstractmethod
    def boundary_tangent(self, z: complex) -> complex:
        """Unit tangent of the boundary at ``z`` (region on the left)."""

    @abstractmethod
    def boundary_step(self, z: complex, direction: complex, h: float) -> complex:
        """Point reached from ``z`` by moving a distance h along the boundary."""

    @property
    def is_bounded(self) -> bool:
        return not self.contains_infinity()

    def contains(self, z: ExtendedComplex, tol: float = 0.0) -> bool:
        """Membership, with the point at infinity handled explicitly."""
        if is_infinity(z):
            return self.contains_infinity()
        return bool(self.contains_array(np.asarray(complex(z)), tol))

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready description."""
        raise NotImplementedError


@dataclass(frozen=True)
class ClosedDisk(GeneralizedDisk):
    """{z : |z - center| <= radius}."""

    center: complex
    radius: float
    kind: str = field(default="closed", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and math.isfinite(self.radius)) or not cmath.isfinite(self.center):
            raise ValidationError(f"Disk needs a finite center and positive radius, got r={self.radius}")

    def hermitian_form(self) -> np.ndarray:
        a, r = self.center, self.radius
        return np.array([[1.0, -a], [-a.conjugate(), abs(a) ** 2 - r**2]], dtype=complex)

    def contains_array(self, z: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return np.abs(np.asarray(z) - self.center) <= self.radius + tol

    def contains_infinity(self) -> bool:
        return False

    def boundary_residual(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)

    def boundary_sample(self, n: int) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * theta)

    def boundary_tangent(self, z: complex) -> complex:
        u = (z - self.center) / abs(z - self.center)
        return 1j * u

    def boundary_step(self, z: complex, direction: complex, h: float) -> complex:
        u = (z - self.center) / self.radius
        sign = 1.0 if (direction * np.conj(1j * u)).real >= 0 else -1.0
        return self.center + self.radius * u * cmath.exp(1j * sign * h / self.radius)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "closed", "center": encode_complex(self.center), "radius": self.radius}


@dataclass(frozen=True)
class ExteriorDisk(GeneralizedDisk):
    """{z : |z - center| >= radius} together with the point at infinity."""

    center: complex
    radius: float
    kind: str = field(default="exterior", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and math.isfinite(self.radius)) or not cmath.isfinite(self.center):
            raise ValidationError(f"Disk needs a finite center and positive radius, got r={self.radius}")

    def hermitian_form(self) -> np.ndarray:
        return -ClosedDisk(self.center, self.radius).hermitian_form()

    def contains_array(self, z: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return np.abs(np.asarray(z) - self.center) >= self.radius - tol

    def contains_infinity(self) -> bool:
        return True

    def boundary_residual(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)

    def boundary_sample(self, n: int) -> np.ndarray:
        return ClosedDisk(self.center, self.radius).boundary_sample(n)

    def boundary_tangent(self, z: complex) -> complex:
        return -ClosedDisk(self.center, self.radius).boundary_tangent(z)

    def boundary_step(self, z: complex, direction: complex, h: float) -> complex:
        return ClosedDisk(self.center, self.radius).boundary_step(z, direction, h)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "exterior", "center": encode_complex(self.center), "radius": self.radius}


@dataclass(frozen=True)
class HalfPlane(GeneralizedDisk):
    """{z : Re(direction * (z - anchor)) >= 0} together with the point at infinity."""

    anchor: complex
    direction: complex
    kind: str = field(default="halfplane", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "anchor", complex(self.anchor))
        object.__setattr__(self, "direction", complex(self.direction))
        if abs(abs(self.direction) - 1.0) > UNIT_DIRECTION_TOL:
            raise ValidationError(
                f"Half-plane direction must have modulus 1, got {abs(self.direction):.15g}"
            )
        if not cmath.isfinite(self.anchor):
            raise ValidationError("Half-plane anchor must be finite")

    def hermitian_form(self) -> np.ndarray:
        alpha, a = self.direction, self.anchor
        b = -alpha.conjugate() / 2.0
        c = (alpha * a).real
        return np.array([[0.0, b], [b.conjugate(), c]], dtype=complex)

    def contains_array(self, z: np.ndarray, tol: float = 0.0) -> np.ndarray:
        return (self.direction * (np.asarray(z) - self.anchor)).real >= -tol

    def contains_infinity(self) -> bool:
        return True

    def boundary_residual(self, z: complex) -> float:
        return abs((self.direction * (z - self.anchor)).real)

    def boundary_sample(self, n: int) -> np.ndarray:
        t = np.tan(np.pi * (np.arange(n) + 0.5) / n - np.pi / 2)
        return self.anchor + 1j * self.direction.conjugate() * t

    def boundary_tangent(self, z: complex) -> complex:
        # inward normal is conj(direction); region on the left of travel
        return -1j * self.direction.conjugate()

    def boundary_step(self, z: complex, direction: complex, h: float) -> complex:
        t = self.boundary_tangent(z)
        sign = 1.0 if (direction * t.conjugate()).real >= 0 else -1.0
        return z + sign * h * t

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "halfplane",
            "anchor": encode_complex(self.anchor),
            "direction": encode_complex(self.direction),
        }


def disk_contains(D: GeneralizedDisk, z: ExtendedComplex) -> bool:
    """Membership of an extended complex point in a generalized disk."""
    return D.contains(z)


def disk_from_hermitian(H: np.ndarray) -> GeneralizedDisk:
    """Recover the generalized disk {v* H v <= 0} from its Hermitian form.

    Raises:
        DegenerateMapError: If the form describes a point or the empty set
    """
    H = np.asarray(H, dtype=complex)
    H = H / np.max(np.abs(H))
    A = H[0, 0].real
    B = H[0, 1]
    C = H[1, 1].real

    if abs(A) <= 1e-12:
        beta = -2.0 * B.conjugate()
        if abs(beta) <= 1e-15:
            raise DegenerateMapError("Hermitian form does not describe a generalized disk")
        alpha = beta / abs(beta)
        anchor = alpha.conjugate() * C / abs(beta)
        return HalfPlane(anchor, alpha)

    center = -B / A
    r2 = abs(B / A) ** 2 - C / A
    if r2 <= 0:
        raise DegenerateMapError("Hermitian form has no real circle")
    if A > 0:
        return ClosedDisk(center, math.sqrt(r2))
    return ExteriorDisk(center, math.sqrt(r2))


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) acting on the Riemann sphere."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        det = self.a * self.d - self.b * self.c
        if abs(det) < MOBIUS_DET_TOL:
            raise DegenerateMapError(f"Mobius map has determinant {abs(det):.3e}")

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "MobiusMap":
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def pole(self) -> complex:
        """The point sent to infinity."""
        if self.c == 0:
            return INFINITY
        return -self.d / self.c

    def __call__(self, z: ExtendedComplex) -> complex:
        if is_infinity(z):
            return INFINITY if self.c == 0 else self.a / self.c
        z = complex(z)
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    def on_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on finite points away from the pole."""
        z = np.asarray(z, dtype=complex)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        return MobiusMap.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def to_rational(self) -> ScalarRational:
        """The map as a scalar rational function in pole-residue form."""
        if self.c == 0:
            return ScalarRational(self.b / self.d, {(INFINITY, 1): self.a / self.d})
        det = self.a * self.d - self.b * self.c
        return ScalarRational(self.a / self.c, {(-self.d / self.c, 1): -det / self.c**2})

    def on_matrix(self, T: object) -> np.ndarray:
        """psi(T) = (aT + bI)(cT + dI)^{-1}.

        Raises:
            PoleOnSpectrumError: If the pole of the map is an eigenvalue of T
        """
        return eval_on_matrix(self.to_rational(), T)

    def __repr__(self) -> str:
        return f"MobiusMap(({self.a:.6g} z + {self.b:.6g}) / ({self.c:.6g} z + {self.d:.6g}))"


def mobius_image(psi: MobiusMap, D: GeneralizedDisk) -> GeneralizedDisk:
    """Exact image of a generalized disk under a Mobius map.

    The form transforms as H' = M^{-*} H M^{-1}; the image boundary is then
    checked on 64 sampled boundary points.
    """
    inv = np.linalg.inv(psi.matrix)
    image = disk_from_hermitian(inv.conj().T @ D.hermitian_form() @ inv)

    worst = 0.0
    for z in D.boundary_sample(64):
        w = psi(z)
        if is_infinity(w) or abs(w) > 1e8:
            continue
        worst = max(worst, image.boundary_residual(w) / (1.0 + abs(w)))
    if worst > 1e-9:
        logger.warning(f"Mobius image boundary check residual {worst:.3e}")
    logger.debug(f"{psi!r} maps {D} onto {image}")
    return image


def canonical_map_to_unit_disk(D: GeneralizedDisk) -> MobiusMap:
    """Mobius map taking D onto the closed unit disk.

    ClosedDisk(a, r) uses (z - a)/r, ExteriorDisk(a, r) uses r/(z - a) and the
    half-plane {Re alpha(z - a) >= 0} uses w = alpha(z - a) followed by
    (1 - w)/(1 + w).
    """
    if isinstance(D, ClosedDisk):
        return MobiusMap(1.0, -D.center, 0.0, D.radius)
    if isinstance(D, ExteriorDisk):
        return MobiusMap(0.0, D.radius, 1.0, -D.center)
    if isinstance(D, HalfPlane):
        alpha, a = D.direction, D.anchor
        return MobiusMap(-alpha, 1.0 + alpha * a, alpha, 1.0 - alpha * a)
    raise ValidationError(f"Unsupported disk type {type(D).__name__}")


@dataclass(frozen=True)
class Sector:
    """Closed circular sector {vertex + t e^{i theta} : 0 <= t <= radius, lower <= theta <= upper}."""

    vertex: complex
    lower: float
    upper: float
    radius: float

    def __post_init__(self) -> None:
        aperture = self.upper - self.lower
        if not (0 < aperture < 2.0 * math.pi) or self.radius <= 0:
            raise ValidationError(f"Sector aperture must lie in (0, 2pi), got {aperture}")

    @property
    def aperture(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertex": encode_complex(self.vertex),
            "lower": self.lower,
            "upper": self.upper,
            "radius": self.radius,
        }


@dataclass(frozen=True)
class CircularArc:
    """Arc of a circle traversed from angle ``start`` to angle ``end``.

    The traversal is counterclockwise when end > start and clockwise otherwise.
    """

    center: complex
    radius: float
    start: float
    end: float
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "end", float(self.end))
        if not self.radius > 0:
            raise ValidationError(f"Arc radius must be positive, got {self.radius}")
        extent = abs(self.end - self.start)
        if not (0 < extent <= 2.0 * math.pi + 1e-12):
            raise ValidationError(f"Arc angular extent must lie in (0, 2pi], got {extent}")

    @property
    def orientation(self) -> int:
        return 1 if self.end > self.start else -1

    @property
    def extent(self) -> float:
        return abs(self.end - self.start)

    @property
    def length(self) -> float:
        return self.radius * self.extent

    def point(self, theta: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        return self.center + self.radius * np.exp(1j * np.asarray(theta))

    @property
    def start_point(self) -> complex:
        return complex(self.point(self.start))

    @property
    def end_point(self) -> complex:
        return complex(self.point(self.end))

    def angle_at_length(self, s: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return self.start + self.orientation * np.asarray(s) / self.radius

    def tangent(self, theta: float) -> complex:
        """Unit tangent in the direction of travel."""
        return self.orientation * 1j * cmath.exp(1j * theta)

    def outward_normal(self, theta: float) -> complex:
        """Unit normal pointing to the right of travel (away from the domain)."""
        return -1j * self.tangent(theta)

    def sample(self, n: int) -> np.ndarray:
        """n points from start to end inclusive."""
        return np.asarray(self.point(np.linspace(self.start, self.end, n)))

    def covers_angle(self, theta: np.ndarray) -> np.ndarray:
        lo = min(self.start, self.end)
        return np.mod(np.asarray(theta) - lo, 2.0 * np.pi) <= self.extent + 1e-12

    def angle_of(self, z: complex) -> float:
        """Parameter angle of the point of the arc's circle nearest to z, within the arc range."""
        lo = min(self.start, self.end)
        return lo + float(np.mod(cmath.phase(z - self.center) - lo, 2.0 * np.pi))

    def distance(self, z: np.ndarray) -> np.ndarray:
        """Euclidean distance from each point to the arc."""
        z = np.asarray(z, dtype=complex)
        rel = z - self.center
        on_circle = np.abs(np.abs(rel) - self.radius)
        to_ends = np.minimum(np.abs(z - self.start_point), np.abs(z - self.end_point))
        return np.where(self.covers_angle(np.angle(rel)), on_circle, to_ends)

    def swept_angle(self, z: np.ndarray) -> np.ndarray:
        """Total change of arg(w - z) as w traverses the arc.

        Each quarter-turn piece contributes its chord angle plus a full turn
        when z lies in the circular segment between chord and arc.
        """
        z = np.asarray(z, dtype=complex)
        pieces = max(1, math.ceil(self.extent / (math.pi / 2)))
        bounds = np.linspace(self.start, self.end, pieces + 1)
        total = np.zeros(z.shape)
        for t0, t1 in zip(bounds[:-1], bounds[1:]):
            p = self.center + self.radius * cmath.exp(1j * t0)
            q = self.center + self.radius * cmath.exp(1j * t1)
            total = total + np.angle((q - z) / (p - z))
            mid = 0.5 * (t0 + t1)
            rel = z - self.center
            in_segment = (np.abs(rel) < self.radius) & (
                (rel * cmath.exp(-1j * mid)).real > self.radius * math.cos(abs(t1 - t0) / 2)
            )
            total = total + np.where(in_segment, 2.0 * np.pi * self.orientation, 0.0)
        return total

    def reversed(self) -> "CircularArc":
        return CircularArc(self.center, self.radius, self.end, self.start, self.label)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "center": encode_complex(self.center),
            "radius": self.radius,
            "from": self.start,
            "to": self.end,
        }


@dataclass(frozen=True)
class ExteriorData:
    """Exterior-disk data of one arc: radius R and sampled (lambda, center) pairs."""

    radius: float
    centers: Tuple[Tuple[complex, complex], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(
            self, "centers", tuple((complex(lam), complex(mu)) for lam, mu in self.centers)
        )
        if not self.radius > 0:
            raise ValidationError(f"Exterior radius must be positive, got {self.radius}")
        if not self.centers:
            raise ValidationError("Exterior data needs at least one sampled center")


class Domain(ABC):
    """Closed region of the Riemann sphere bounded by circular pieces."""

    @abstractmethod
    def contains_array(self, z: np.ndarray, tol: float = BOUNDARY_TOL) -> np.ndarray:
        """Vectorized closure membership for finite points."""

    @abstractmethod
    def contains_infinity(self) -> bool:
        """Whether infinity belongs to the closure."""

    @abstractmethod
    def distance_to_boundary(self, z: np.ndarray) -> np.ndarray:
        """Distance from finite points to the boundary (a lower bound for unbounded boundaries)."""

    @abstractmethod
    def boundary_grid(self, n: int) -> np.ndarray:
        """n boundary points spaced by arc length."""

    @abstractmethod
    def branch_directions(self, z0: complex, tol: float = BOUNDARY_TOL) -> List[float]:
        """Directions (radians) in which boundary pieces leave z0."""

    @abstractmethod
    def component_index(self, z: ExtendedComplex) -> Optional[int]:
        """Complementary component holding z, or None for points of the closure."""

    @property
    @abstractmethod
    def component_count(self) -> int:
        """Number of connected components of the complement."""

    @property
    @abstractmethod
    def complement_points(self) -> List[complex]:
        """One representative point per complementary component."""

    def contains(self, z: ExtendedComplex, tol: float = BOUNDARY_TOL) -> bool:
        if is_infinity(z):
            return self.contains_infinity()
        return bool(self.contains_array(np.asarray(complex(z)), tol))

    def on_boundary(self, z: ExtendedComplex, tol: float = BOUNDARY_TOL) -> bool:
        if is_infinity(z):
            return False
        return bool(self.distance_to_boundary(np.asarray(complex(z))) <= tol)


def _check_boundary_size(n: int) -> None:
    if n < 4:
        raise ValidationError(f"Boundary grid needs at least 4 points, got {n}")


def _signed_area(curve: Sequence[CircularArc]) -> float:
    area = 0.0
    for arc in curve:
        chord = arc.end_point - arc.start_point
        area += (arc.center.conjugate() * chord).imag + arc.radius**2 * (arc.end - arc.start)
    return 0.5 * area


class PiecewiseCircularDomain(Domain):
    """Jordan region (possibly with holes) bounded by chains of circular arcs.

    The domain lies to the left of every arc. Arcs are indexed in the order
    of their curves; exterior data is keyed by that global index.
    """

    def __init__(
        self,
        curves: Sequence[Sequence[CircularArc]],
        exterior: Optional[Mapping[int, ExteriorData]] = None,
        complement_points: Optional[Sequence[ExtendedComplex]] = None,
    ) -> None:
        """Initialize and validate the domain.

        Args:
            curves: Closed chains of arcs
            exterior: Exterior-disk data per global arc index
            complement_points: Representative points of the complement components

        Raises:
            ValidationError: If a chain does not close, exterior data is
                inconsistent, or more than one curve is counterclockwise
        """
        self._curves: List[List[CircularArc]] = [list(c) for c in curves]
        if not self._curves or any(not c for c in self._curves):
            raise ValidationError("Domain needs at least one non-empty curve")

        for ci, curve in enumerate(self._curves):
            for k, arc in enumerate(curve):
                nxt = curve[(k + 1) % len(curve)]
                gap = abs(arc.end_point - nxt.start_point)
                if gap > CHAIN_TOL:
                    raise ValidationError(
                        f"Curve {ci} does not close: gap {gap:.3e} between arc {k} "
                        f"and arc {(k + 1) % len(curve)}",
                        errors=[f"curves[{ci}].arcs[{k}]"],
                    )

        self._orientations = [1 if _signed_area(c) > 0 else -1 for c in self._curves]
        if self._orientations.count(1) > 1:
            raise ValidationError("Domain must be connected: at most one counterclockwise curve")

        self._arcs: List[CircularArc] = [arc for curve in self._curves for arc in curve]
        self._exterior: Dict[int, ExteriorData] = dict(exterior or {})
        for k, data in self._exterior.items():
            if not 0 <= k < len(self._arcs):
                raise ValidationError(f"Exterior data refers to missing arc {k}")
            arc = self._arcs[k]
            for lam, mu in data.centers:
                if abs(abs(lam - mu) - data.radius) > 1e-9 * (1.0 + data.radius):
                    raise ValidationError(
                        f"Arc {k}: center {mu} is at distance {abs(lam - mu):.12g} "
                        f"from {lam}, expected R = {data.radius}",
                        errors=[f"exterior[{k}].centers"],
                    )
                if float(arc.distance(np.asarray(lam))) > CHAIN_TOL * (1.0 + abs(lam)):
                    raise ValidationError(
                        f"Arc {k}: sample point {lam} is not on the arc",
                        errors=[f"exterior[{k}].centers"],
                    )

        self._complement = (
            [complex(p) for p in complement_points]
            if complement_points is not None
            else self._default_complement_points()
        )

    def _default_complement_points(self) -> List[complex]:
        points: List[complex] = []
        for curve, orientation in zip(self._curves, self._orientations):
            if orientation == 1:
                points.append(INFINITY)
                continue
            arc = max(curve, key=lambda a: a.length)
            mid = 0.5 * (arc.start + arc.end)
            step = 1e-3 * min(arc.radius, arc.length)
            points.append(complex(arc.point(mid)) + step * arc.outward_normal(mid))
        return points

    @property
    def curves(self) -> List[List[CircularArc]]:
        return [list(c) for c in self._curves]

    @property
    def arcs(self) -> List[CircularArc]:
        return list(self._arcs)

    @property
    def exterior(self) -> Dict[int, ExteriorData]:
        return dict(self._exterior)

    @property
    def orientations(self) -> List[int]:
        return list(self._orientations)

    @property
    def complement_points(self) -> List[complex]:
        return list(self._complement)

    @property
    def component_count(self) -> int:
        return len(self._curves)

    @property
    def total_length(self) -> float:
        return sum(a.length for a in self._arcs)

    def winding(self, z: np.ndarray, curve: Optional[int] = None) -> np.ndarray:
        """Winding number of the boundary (or one curve) around points off it."""
        arcs = self._arcs if curve is None else self._curves[curve]
        z = np.asarray(z, dtype=complex)
        total = np.zeros(z.shape)
        for arc in arcs:
            total = total + arc.swept_angle(z)
        return np.rint(total / (2.0 * np.pi)).astype(int)

    def contains_infinity(self) -> bool:
        return 1 not in self._orientations

    def contains_array(self, z: np.ndarray, tol: float = BOUNDARY_TOL) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        near = self.distance_to_boundary(z) <= tol
        target = 0 if self.contains_infinity() else 1
        safe = np.where(near, z + 1.0 + 1e6 * (1.0 + np.abs(z)), z)
        return near | (self.winding(safe) == target)

    def distance_to_boundary(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.min(np.stack([arc.distance(z) for arc in self._arcs]), axis=0)

    def component_index(self, z: ExtendedComplex) -> Optional[int]:
        if is_infinity(z):
            if self.contains_infinity():
                return None
            return self._orientations.index(1)
        z = complex(z)
        if self.contains(z):
            return None
        for i, orientation in enumerate(self._orientations):
            w = int(self.winding(np.asarray(z), curve=i))
            if (orientation == 1 and w == 0) or (orientation == -1 and w == -1):
                return i
        return None

    def boundary_points_at(self, s: np.ndarray) -> np.ndarray:
        """Boundary points at arc-length parameters s in [0, total_length)."""
        s = np.mod(np.asarray(s, dtype=float), self.total_length)
        lengths = np.array([a.length for a in self._arcs])
        offsets = np.concatenate([[0.0], np.cumsum(lengths)[:-1]])
        idx = np.clip(np.searchsorted(offsets, s, side="right") - 1, 0, len(self._arcs) - 1)
        out = np.empty(s.shape, dtype=complex)
        for k, arc in enumerate(self._arcs):
            mask = idx == k
            if np.any(mask):
                out[mask] = arc.point(arc.angle_at_length(s[mask] - offsets[k]))
        return out

    def boundary_grid(self, n: int) -> np.ndarray:
        _check_boundary_size(n)
        return self.boundary_points_at(self.total_length * np.arange(n) / n)

    def branch_directions(self, z0: complex, tol: float = BOUNDARY_TOL) -> List[float]:
        directions: List[float] = []
        for arc in self._arcs:
            if float(arc.distance(np.asarray(z0))) > tol:
                continue
            if abs(z0 - arc.start_point) <= tol:
                candidates = [arc.tangent(arc.start)]
            elif abs(z0 - arc.end_point) <= tol:
                candidates = [-arc.tangent(arc.end)]
            else:
                t = arc.tangent(arc.angle_of(z0))
                candidates = [t, -t]
            for c in candidates:
                theta = _wrap_angle(cmath.phase(c))
                if all(_circular_gap(theta, d) > 1e-9 for d in directions):
                    directions.append(theta)
        return sorted(directions)

    def vertices(self) -> List[Tuple[int, int, complex]]:
        """(incoming arc, outgoing arc, point) for every junction, by global index."""
        out: List[Tuple[int, int, complex]] = []
        offset = 0
        for curve in self._curves:
            n = len(curve)
            for k in range(n):
                out.append((offset + k, offset + (k + 1) % n, curve[k].end_point))
            offset += n
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "curves": [{"arcs": [a.to_dict() for a in c]} for c in self._curves],
            "exterior": [
                {
                    "arc": k,
                    "R": d.radius,
                    "centers": [[lam.real, lam.imag, mu.real, mu.imag] for lam, mu in d.centers],
                }
                for k, d in sorted(self._exterior.items())
            ],
            "complement_points": [encode_complex(p) for p in self._complement],
        }


def _circle_crossings(
    a1: complex, r1: float, a2: complex, r2: float
) -> List[complex]:
    d = abs(a2 - a1)
    if d == 0 or d > r1 + r2 + 1e-12 or d < abs(r1 - r2) - 1e-12:
        return []
    x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h = math.sqrt(max(r1 * r1 - x * x, 0.0))
    u = (a2 - a1) / d
    if h <= 1e-12 * r1:
        return [a1 + x * u]
    return [a1 + (x + 1j * h) * u, a1 + (x - 1j * h) * u]


class DiskIntersection(Domain):
    """Finite intersection of generalized disks with exact membership."""

    def __init__(self, disks: Sequence[GeneralizedDisk]) -> None:
        """Initialize from a non-empty list of generalized disks.

        Raises:
            ValidationError: If the list is empty
        """
        self._disks: List[GeneralizedDisk] = list(disks)
        if not self._disks:
            raise ValidationError("Disk intersection needs at least one disk")

    @property
    def disks(self) -> List[GeneralizedDisk]:
        return list(self._disks)

    def contains_array(self, z: np.ndarray, tol: float = BOUNDARY_TOL) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        result = np.ones(z.shape, dtype=bool)
        for disk in self._disks:
            result &= disk.contains_array(z, tol)
        return result

    def contains_infinity(self) -> bool:
        return all(d.contains_infinity() for d in self._disks)

    def distance_to_boundary(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self._has_halfplane():
            dists = [
                np.vectorize(d.boundary_residual, otypes=[float])(z) for d in self._disks
            ]
            return np.min(np.stack(dists), axis=0)
        return self.piecewise.distance_to_boundary(z)

    @cached_property
    def piecewise(self) -> "PiecewiseCircularDomain":
        """Default piecewise-circular form of the boundary, built once."""
        return self.to_piecewise()

    def _has_halfplane(self) -> bool:
        return any(isinstance(d, HalfPlane) for d in self._disks)

    def _complement_overlap(self, i: int, j: int) -> bool:
        di, dj = self._disks[i], self._disks[j]
        if not di.contains_infinity() and not dj.contains_infinity():
            return True
        if isinstance(di, HalfPlane) and isinstance(dj, HalfPlane):
            if abs(di.direction + dj.direction) <= 1e-12:
                alpha = di.direction
                return (alpha * dj.anchor).real < (alpha * di.anchor).real
            return True
        for x, y in ((di, dj), (dj, di)):
            if isinstance(x, ExteriorDisk):
                if isinstance(y, ClosedDisk):
                    return abs(x.center - y.center) + x.radius > y.radius
                if isinstance(y, HalfPlane):
                    return (y.direction * (x.center - y.anchor)).real < x.radius
                if isinstance(y, ExteriorDisk):
                    return abs(x.center - y.center) < x.radius + y.radius
        return True

    @cached_property
    def _components(self) -> List[List[int]]:
        n = len(self._disks)
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in range(i + 1, n):
                if self._complement_overlap(i, j):
                    parent[find(i)] = find(j)
        groups: Dict[int, List[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    @property
    def component_count(self) -> int:
        return len(self._components)

    @property
    def complement_points(self) -> List[complex]:
        points: List[complex] = []
        for group in self._components:
            if any(not self._disks[i].contains_infinity() for i in group):
                points.append(INFINITY)
                continue
            disk = self._disks[group[0]]
            if isinstance(disk, HalfPlane):
                points.append(disk.anchor - disk.direction.conjugate())
            else:
                points.append(disk.center)  # type: ignore[attr-defined]
        return points

    def component_index(self, z: ExtendedComplex) -> Optional[int]:
        if is_infinity(z):
            for k, group in enumerate(self._components):
                if any(not self._disks[i].contains_infinity() for i in group):
                    return k
            return None
        z = complex(z)
        for k, group in enumerate(self._components):
            if any(not self._disks[i].contains(z) for i in group):
                return k
        return None

    def branch_directions(self, z0: complex, tol: float = BOUNDARY_TOL) -> List[float]:
        h = 1e-6 * (1.0 + abs(z0))
        directions: List[float] = []
        for i, disk in enumerate(self._disks):
            if disk.boundary_residual(z0) > tol:
                continue
            t = disk.boundary_tangent(z0)
            for sign in (1.0, -1.0):
                probe = disk.boundary_step(z0, sign * t, h)
                others = [d for j, d in enumerate(self._disks) if j != i]
                if all(d.contains(probe, tol=1e-12 * (1.0 + abs(probe))) for d in others):
                    theta = _wrap_angle(cmath.phase(sign * t))
                    if all(_circular_gap(theta, d) > 1e-9 for d in directions):
                        directions.append(theta)
        return sorted(directions)

    def boundary_grid(self, n: int) -> np.ndarray:
        _check_boundary_size(n)
        return self.piecewise.boundary_grid(n)

    def _boundary_arcs(self) -> List[Tuple[int, CircularArc]]:
        kept: List[Tuple[int, CircularArc]] = []
        for i, disk in enumerate(self._disks):
            center, radius = disk.center, disk.radius  # type: ignore[attr-defined]
            others = [d for j, d in enumerate(self._disks) if j != i]
            angles: List[float] = []
            for d in others:
                if abs(d.center - center) <= 1e-12 and abs(d.radius - radius) <= 1e-12:  # type: ignore[attr-defined]
                    raise ValidationError("Disk intersection contains a repeated circle")
                for p in _circle_crossings(center, radius, d.center, d.radius):  # type: ignore[attr-defined]
                    theta = _wrap_angle(cmath.phase(p - center))
                    if all(_circular_gap(theta, t) > 1e-12 for t in angles):
                        angles.append(theta)
            angles.sort()
            if not angles:
                spans = [(0.0, 2.0 * math.pi)]
            else:
                ends = angles[1:] + [angles[0] + 2.0 * math.pi]
                spans = list(zip(angles, ends))
            for lo, hi in spans:
                mid = center + radius * cmath.exp(0.5j * (lo + hi))
                if all(d.contains(mid, tol=1e-12 * (1.0 + abs(mid))) for d in others):
                    if isinstance(disk, ClosedDisk):
                        kept.append((i, CircularArc(center, radius, lo, hi)))
                    else:
                        kept.append((i, CircularArc(center, radius, hi, lo)))
        return kept

    def to_piecewise(
        self,
        exterior_radius: float = 1.0,
        samples: int = DEFAULT_EXTERIOR_SAMPLES,
        max_arc_angle: float = DEFAULT_MAX_ARC_ANGLE,
    ) -> "PiecewiseCircularDomain":
        """Convert to a piecewise-circular domain with generated exterior data.

        Convex arcs get centers lambda + R (lambda - a)/r at radius
        ``exterior_radius``; arcs bounding a hole get the hole center at the
        hole radius.

        Raises:
            UnboundedBoundaryError: If a half-plane contributes boundary
            DomainError: If the boundary is empty or the arcs do not chain
        """
        if self._has_halfplane():
            raise UnboundedBoundaryError(
                "Boundary contains straight pieces reaching infinity; "
                "an unbounded boundary requires a truncation parameter"
            )
        if samples < 2:
            raise ValidationError("Exterior data needs at least 2 samples per arc")

        pieces: List[Tuple[int, CircularArc]] = []
        for i, arc in self._boundary_arcs():
            count = max(1, math.ceil(arc.extent / max_arc_angle - 1e-12))
            bounds = np.linspace(arc.start, arc.end, count + 1)
            pieces.extend(
                (i, CircularArc(arc.center, arc.radius, float(t0), float(t1)))
                for t0, t1 in zip(bounds[:-1], bounds[1:])
            )
        if not pieces:
            raise DomainError("Disk intersection has an empty boundary")

        scale = 1.0 + max(abs(arc.center) + arc.radius for _, arc in pieces)
        unused = list(range(len(pieces)))
        curves: List[List[Tuple[int, CircularArc]]] = []
        while unused:
            chain = [pieces[unused.pop(0)]]
            while abs(chain[-1][1].end_point - chain[0][1].start_point) > CHAIN_TOL * scale:
                tail = chain[-1][1].end_point
                nxt = next(
                    (k for k in unused if abs(pieces[k][1].start_point - tail) <= 1e-8 * scale),
                    None,
                )
                if nxt is None:
                    raise DomainError("Boundary arcs of the disk intersection do not chain")
                unused.remove(nxt)
                chain.append(pieces[nxt])
            curves.append(chain)

        exterior: Dict[int, ExteriorData] = {}
        arcs_out: List[List[CircularArc]] = []
        index = 0
        for chain in curves:
            arcs_curve: List[CircularArc] = []
            for i, arc in chain:
                arcs_curve.append(arc)
                disk = self._disks[i]
                lams = arc.sample(samples)
                if isinstance(disk, ClosedDisk):
                    mus = lams + exterior_radius * (lams - arc.center) / arc.radius
                    data = ExteriorData(exterior_radius, tuple(zip(lams, mus)))
                else:
                    data = ExteriorData(arc.radius, tuple((lam, arc.center) for lam in lams))
                exterior[index] = data
                index += 1
            arcs_out.append(arcs_curve)

        return PiecewiseCircularDomain(arcs_out, exterior, self.complement_points)

    def __repr__(self) -> str:
        return f"DiskIntersection({self._disks!r})"


def as_domain(region: DomainLike) -> Domain:
    """Wrap a generalized disk as a single-disk intersection."""
    if isinstance(region, GeneralizedDisk):
        return DiskIntersection([region])
    if isinstance(region, Domain):
        return region
    raise ValidationError(f"Expected a domain or generalized disk, got {type(region).__name__}")


class TransversalityReport(BaseModel):
    """Outcome of the five-sector search at a boundary point."""

    transversal: bool
    point: Union[List[float], str]
    aperture_m: Optional[int] = None
    sectors: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    note: str = ""


def _invert_domain(domain: Domain) -> Domain:
    if isinstance(domain, DiskIntersection):
        inversion = MobiusMap(0.0, 1.0, 1.0, 0.0)
        return DiskIntersection([mobius_image(inversion, d) for d in domain.disks])
    raise DomainError("Infinity is not on the boundary of a bounded piecewise-circular domain")


def _separation_grid(directions: Sequence[float], aperture_grid: Sequence[int]) -> List[int]:
    """Grid values m for which the directions are pairwise more than 2 pi/m apart."""
    good = []
    for m in sorted(aperture_grid):
        delta = 2.0 * math.pi / m
        if all(
            _circular_gap(a, b) > delta + 1e-12
            for i, a in enumerate(directions)
            for b in directions[i + 1:]
        ):
            good.append(m)
    return good


def transversal_at(
    omega1: DomainLike,
    omega2: DomainLike,
    z0: ExtendedComplex,
    aperture_grid: Sequence[int] = DEFAULT_APERTURE_GRID,
    tol: float = BOUNDARY_TOL,
) -> TransversalityReport:
    """Search for five disjoint equal-aperture sectors witnessing a transversal crossing.

    S0 must avoid both closures; S1 and S2 (left and right) must hold the
    local boundary pieces of each domain; the interiors must meet near z0.

    Args:
        omega1: First domain (or generalized disk)
        omega2: Second domain (or generalized disk)
        z0: Common boundary point, possibly infinity
        aperture_grid: Values m giving apertures 2 pi/m
        tol: Boundary membership tolerance

    Returns:
        Report with the sector witness, or the reason for refutation

    Raises:
        DomainError: If z0 is not on both boundaries
    """
    d1, d2 = as_domain(omega1), as_domain(omega2)
    point = encode_complex(z0)
    if is_infinity(z0):
        d1, d2 = _invert_domain(d1), _invert_domain(d2)
        z0 = 0j
    z0 = complex(z0)
    for name, d in (("first", d1), ("second", d2)):
        if not d.on_boundary(z0, tol):
            raise DomainError(f"Point {z0} is not on the boundary of the {name} domain")

    h = 1e-6 * (1.0 + abs(z0))
    theta = 2.0 * np.pi * np.arange(_DIRECTION_SAMPLES) / _DIRECTION_SAMPLES
    probes = z0 + h * np.exp(1j * theta)
    margin = 1e-3 * h
    inner = (
        d1.contains_array(probes, 0.0)
        & d2.contains_array(probes, 0.0)
        & (d1.distance_to_boundary(probes) > margin)
        & (d2.distance_to_boundary(probes) > margin)
    )
    if not np.any(inner):
        return TransversalityReport(
            transversal=False, point=point, note="intersection does not accumulate at the point"
        )

    b1 = d1.branch_directions(z0, tol)
    b2 = d2.branch_directions(z0, tol)
    if len(b1) != 2 or len(b2) != 2:
        return TransversalityReport(
            transversal=False, point=point, note="a boundary is not a simple curve at the point"
        )

    outside = ~d1.contains_array(probes, 0.0) & ~d2.contains_array(probes, 0.0)
    branches = [b1[0], b1[1], b2[0], b2[1]]
    names = ["S1_left", "S1_right", "S2_left", "S2_right"]
    for m in _separation_grid(branches, aperture_grid):
        delta = 2.0 * math.pi / m
        width = _DIRECTION_SAMPLES // m
        for k in range(SECTOR_PLACEMENTS):
            lower = 2.0 * math.pi * k / SECTOR_PLACEMENTS
            mid = lower + delta / 2
            if any(_circular_gap(mid, b) <= delta + 1e-12 for b in branches):
                continue
            idx = (8 * k + np.arange(width + 1)) % _DIRECTION_SAMPLES
            if not np.all(outside[idx]):
                continue
            sectors = {"S0": Sector(z0, lower, lower + delta, h)}
            for name, b in zip(names, branches):
                sectors[name] = Sector(z0, b - delta / 2, b + delta / 2, h)
            return TransversalityReport(
                transversal=True,
                point=point,
                aperture_m=m,
                sectors={k: s.to_dict() for k, s in sectors.items()},
            )

    return TransversalityReport(
        transversal=False,
        point=point,
        note=f"not transversal at resolution m <= {max(aperture_grid)}",
    )


class ExteriorDiskReport(BaseModel):
    """Outcome of the exterior disk condition on sampled boundary points."""

    passed: bool
    radius: float
    samples: int
    witnesses: List[List[float]] = Field(default_factory=list)
    failures: List[List[float]] = Field(default_factory=list)


def _touching_center_ok(
    domain: PiecewiseCircularDomain, mu: complex, R: float, tol: float
) -> bool:
    if domain.contains(mu, tol=0.0):
        return False
    return float(domain.distance_to_boundary(np.asarray(mu))) >= R - tol


def exterior_disk_condition(
    domain: PiecewiseCircularDomain,
    R: float,
    samples: int = DEFAULT_EXTERIOR_SAMPLES,
    tol: float = BOUNDARY_TOL,
) -> ExteriorDiskReport:
    """Check that every sampled boundary point is touched by an exterior disk of radius R.

    Candidate centers lie along the outward normals; at arc junctions both
    adjacent normals and their bisector are tried. Emptiness of B(mu, R)
    inside the domain is decided by exact distances to the arcs.
    """
    if R <= 0:
        raise ValidationError(f"Exterior radius must be positive, got {R}")

    arcs = domain.arcs
    candidates: List[Tuple[complex, List[complex]]] = []
    for lam in domain.boundary_grid(max(samples, 4)):
        k = int(np.argmin([float(a.distance(np.asarray(lam))) for a in arcs]))
        candidates.append((lam, [arcs[k].outward_normal(arcs[k].angle_of(lam))]))
    for incoming, outgoing, vertex in domain.vertices():
        n_in = arcs[incoming].outward_normal(arcs[incoming].end)
        n_out = arcs[outgoing].outward_normal(arcs[outgoing].start)
        normals = [n_in, n_out]
        if abs(n_in + n_out) > 1e-12:
            normals.append((n_in + n_out) / abs(n_in + n_out))
        candidates.append((vertex, normals))

    witnesses: List[List[float]] = []
    failures: List[List[float]] = []
    for lam, normals in candidates:
        mu = next(
            (lam + R * n for n in normals if _touching_center_ok(domain, lam + R * n, R, tol)),
            None,
        )
        if mu is None:
            failures.append([lam.real, lam.imag])
        else:
            witnesses.append([lam.real, lam.imag, mu.real, mu.imag])

    logger.debug(f"Exterior disk condition R={R}: {len(failures)} failing samples")
    return ExteriorDiskReport(
        passed=not failures,
        radius=R,
        samples=len(candidates),
        witnesses=witnesses,
        failures=failures,
    )


def minimal_enclosing_circle(points: Sequence[complex]) -> Tuple[complex, float]:
    """Smallest circle containing all points (randomized incremental construction)."""
    pts = [complex(p) for p in points]
    if not pts:
        raise ValidationError("Enclosing circle needs at least one point")
    order = np.random.default_rng(0).permutation(len(pts))
    pts = [pts[i] for i in order]

    def circle2(p: complex, q: complex) -> Tuple[complex, float]:
        return (p + q) / 2, abs(p - q) / 2

    def circle3(p: complex, q: complex, r: complex) -> Tuple[complex, float]:
        b, c = q - p, r - p
        d = 2.0 * (b.real * c.imag - b.imag * c.real)
        if abs(d) < 1e-300:
            pairs = [circle2(p, q), circle2(p, r), circle2(q, r)]
            return max(pairs, key=lambda cr: cr[1])
        ux = (c.imag * abs(b) ** 2 - b.imag * abs(c) ** 2) / d
        uy = (b.real * abs(c) ** 2 - c.real * abs(b) ** 2) / d
        center = p + complex(ux, uy)
        return center, abs(center - p)

    def outside(p: complex, c: complex, r: float) -> bool:
        return abs(p - c) > r * (1.0 + 1e-12) + 1e-15

    c, r = pts[0], 0.0
    for i in range(1, len(pts)):
        if outside(pts[i], c, r):
            c, r = pts[i], 0.0
            for j in range(i):
                if outside(pts[j], c, r):
                    c, r = circle2(pts[i], pts[j])
                    for k in range(j):
                        if outside(pts[k], c, r):
                            c, r = circle3(pts[i], pts[j], pts[k])
    return c, r


class ClauseResult(BaseModel):
    """Pass/fail of one clause with the failing items."""

    passed: bool
    failures: List[str] = Field(default_factory=list)


class ConditionReport(BaseModel):
    """Per-clause verdict of the arc-collection condition on a domain."""

    passed: bool
    clauses: Dict[str, ClauseResult]


def condition_A_check(
    domain: PiecewiseCircularDomain,
    aperture_grid: Sequence[int] = DEFAULT_APERTURE_GRID,
    tol: float = BOUNDARY_TOL,
) -> ConditionReport:
    """Verify the arc-collection hypotheses on a piecewise-circular domain.

    Clauses: every sampled disk B(mu_k(lambda), R_k) touches the domain only
    at lambda; each arc's disks share a point (enclosing-circle test on the
    centers); arcs meet transversally at junctions; Ahlfors regularity is
    certified statically for circular arcs.
    """
    touch = ClauseResult(passed=True)
    common = ClauseResult(passed=True)
    transversal = ClauseResult(passed=True)

    for k, arc in enumerate(domain.arcs):
        data = domain.exterior.get(k)
        if data is None:
            touch.failures.append(f"arc {k}: no exterior data")
            common.failures.append(f"arc {k}: no exterior data")
            continue
        bad = [
            lam
            for lam, mu in data.centers
            if not _touching_center_ok(domain, mu, data.radius, tol)
        ]
        if bad:
            touch.failures.append(f"arc {k}: {len(bad)} disks meet the domain, first at {bad[0]}")
        _, r = minimal_enclosing_circle([mu for _, mu in data.centers])
        if r > data.radius + tol:
            common.failures.append(
                f"arc {k}: centers need enclosing radius {r:.6g} > R = {data.radius:.6g}"
            )

    arcs = domain.arcs
    for incoming, outgoing, vertex in domain.vertices():
        d_in = _wrap_angle(cmath.phase(-arcs[incoming].tangent(arcs[incoming].end)))
        d_out = _wrap_angle(cmath.phase(arcs[outgoing].tangent(arcs[outgoing].start)))
        if not _separation_grid([d_in, d_out], aperture_grid):
            transversal.failures.append(
                f"arcs {incoming}->{outgoing} at {vertex:.6g}: "
                f"not transversal at resolution m <= {max(aperture_grid)}"
            )

    for clause in (touch, common, transversal):
        clause.passed = not clause.failures
    clauses = {
        "touch": touch,
        "common_intersection": common,
        "transversal_endpoints": transversal,
        "ahlfors_regular": ClauseResult(passed=True),
    }
    return ConditionReport(passed=all(c.passed for c in clauses.values()), clauses=clauses)


def pole_set_valid(poles: Sequence[ExtendedComplex], domain: DomainLike) -> bool:
    """True iff every pole is off the closure and every complementary component holds one."""
    d = as_domain(domain)
    covered = set()
    for lam in poles:
        idx = d.component_index(lam)
        if idx is None:
            return False
        covered.add(idx)
    return len(covered) == d.component_count


def boundary_grid(domain: DomainLike, n: int) -> np.ndarray:
    """n boundary points spaced by arc length, starting at the first arc's start.

    Raises:
        UnboundedBoundaryError: If the boundary reaches infinity
    """
    return as_domain(domain).boundary_grid(n)
