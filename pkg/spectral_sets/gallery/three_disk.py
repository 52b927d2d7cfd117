"""Intersection of three unit disks centered at a small equilateral triangle."""

import cmath
import math
from typing import List

import numpy as np

from spectral_sets.exceptions import ValidationError
from spectral_sets.gallery.base import ClaimOutcome, GalleryItem
from spectral_sets.geometry import ClosedDisk, DiskIntersection, MobiusMap
from spectral_sets.matcalc import ScalarRational

MAX_EPSILON = 0.1

ARC_SAMPLES = 64

FINITE_DIFFERENCE_STEP = 1e-5


class ThreeDiskAdmissible(GalleryItem):
    """Omega = D_1 n D_2 n D_3 with unit disks centered at z_1 = 0, z_2 = eps, z_3.

    phi_1(z) = ((z - z0)/(1 - conj(z0) z))^2 has a double zero at the
    centroid z0 and modulus 1 on the unit circle, hence on J_1. The other
    functions are phi_k = phi_1 o eta_k with eta_k the rotation about z0 by
    +-2pi/3 that takes z_k to z_1.
    """

    name = "three-disk"
    claim = "|phi_k| = 1 on J_k, phi_k'(z0) = 0 and |phi_k| < 1 inside Omega"

    def __init__(self, epsilon: float) -> None:
        if not 0.0 < epsilon <= MAX_EPSILON:
            raise ValidationError(f"epsilon must lie in (0, {MAX_EPSILON}], got {epsilon}")
        super().__init__(epsilon=float(epsilon))
        self.epsilon = float(epsilon)
        eps = self.epsilon
        self.vertices = (0j, complex(eps, 0.0), complex(eps / 2.0, math.sqrt(3.0) * eps / 2.0))
        self.center = sum(self.vertices) / 3.0
        self.domain = DiskIntersection([ClosedDisk(z, 1.0) for z in self.vertices])

    @property
    def operator(self) -> np.ndarray:
        """Diagonal operator carrying the triangle vertices."""
        return np.diag(np.array(self.vertices, dtype=complex))

    def rotation(self, k: int) -> complex:
        """omega_k with eta_k(z) = z0 + omega_k (z - z0)."""
        z0 = self.center
        return (self.vertices[0] - z0) / (self.vertices[k] - z0)

    def eta(self, k: int, z: complex) -> complex:
        return self.center + self.rotation(k) * (z - self.center)

    @property
    def factor(self) -> MobiusMap:
        """m(z) = (z - z0)/(1 - conj(z0) z), so phi_1 = m^2."""
        z0 = self.center
        return MobiusMap(1.0, -z0, -z0.conjugate(), 1.0)

    def phi(self, k: int, z: np.ndarray) -> np.ndarray:
        """phi_k(z) = m(eta_k(z))^2 evaluated through the Mobius map."""
        z = np.asarray(z, dtype=complex)
        return self.factor.on_array(self.center + self.rotation(k) * (z - self.center)) ** 2

    @property
    def functions(self) -> List[ScalarRational]:
        """phi_1..phi_3 in pole-residue form, for the functional calculus."""
        z0 = self.center
        factor = self.factor.to_rational()
        phi1 = factor * factor
        out = []
        for k in range(3):
            omega = self.rotation(k)
            out.append(phi1.compose_affine(omega, z0 * (1.0 - omega)))
        return out

    def arc_angles(self, k: int, samples: int = ARC_SAMPLES) -> np.ndarray:
        """Angles about z_k of the boundary arc J_k, endpoints included."""
        mid = cmath.phase(self.center - self.vertices[k])
        half = math.acos(self.epsilon / 2.0) - math.pi / 6.0
        return mid + np.linspace(-half, half, samples)

    def arc_samples(self, k: int, samples: int = ARC_SAMPLES) -> np.ndarray:
        return self.vertices[k] + np.exp(1j * self.arc_angles(k, samples))

    def arc_length(self, k: int) -> float:
        """Length of J_k measured on the boundary of Omega."""
        zk = self.vertices[k]
        return sum(
            arc.length
            for arc in self.domain.piecewise.arcs
            if abs(arc.center - zk) <= 1e-9 and abs(arc.radius - 1.0) <= 1e-9
        )

    def interior_samples(self) -> np.ndarray:
        inner = 1.0 - abs(self.center - self.vertices[0])
        radii = inner * np.array([0.0, 0.25, 0.5, 0.9])
        angles = 2.0 * np.pi * np.arange(16) / 16
        return (self.center + radii[:, None] * np.exp(1j * angles)[None, :]).ravel()

    def check(self) -> List[ClaimOutcome]:
        z0 = self.center
        h = FINITE_DIFFERENCE_STEP
        interior = self.interior_samples()
        outcomes: List[ClaimOutcome] = []
        for k, phi in enumerate(self.functions):
            values = self.phi(k, self.arc_samples(k))
            outcomes.append(
                ClaimOutcome.at_most(
                    f"|phi_{k + 1}| = 1 on J_{k + 1}",
                    float(np.max(np.abs(np.abs(values) - 1.0))),
                    1e-10,
                )
            )
            outcomes.append(
                ClaimOutcome.holds(
                    f"J_{k + 1} lies on the boundary of Omega",
                    all(self.domain.on_boundary(z) for z in self.arc_samples(k)),
                )
            )
            slope = abs(self.phi(k, z0 + h) - self.phi(k, z0 - h)) / (2.0 * h)
            outcomes.append(ClaimOutcome.at_most(f"phi_{k + 1}'(z0) = 0", slope, 1e-8))
            outcomes.append(
                ClaimOutcome.at_most(
                    f"|phi_{k + 1}| < 1 inside Omega",
                    float(np.max(np.abs(self.phi(k, interior)))),
                    1.0 - 1e-12,
                )
            )
            inner_arc = self.arc_samples(k)[3:-3]
            outcomes.append(
                ClaimOutcome.at_least(
                    f"|phi_{k + 1}'| >= 1e-3 on J_{k + 1} away from corners",
                    float(np.min(np.abs(phi.derivative()(inner_arc)))),
                    1e-3,
                )
            )
            outcomes.append(
                ClaimOutcome.at_most(f"eta_{k + 1}(z0) = z0", abs(self.eta(k, z0) - z0), 1e-12)
            )
            outcomes.append(
                ClaimOutcome.at_most(
                    f"eta_{k + 1}(z_{k + 1}) = z_1",
                    abs(self.eta(k, self.vertices[k]) - self.vertices[0]),
                    1e-12,
                )
            )
            outcomes.append(
                ClaimOutcome.at_most(
                    f"length of J_{k + 1} is within 2 epsilon of 2pi/3",
                    abs(self.arc_length(k) - 2.0 * math.pi / 3.0),
                    2.0 * self.epsilon,
                )
            )
        return outcomes


def three_disk_admissible(epsilon: float) -> ThreeDiskAdmissible:
    """Build the three-disk domain, its centroid and the functions phi_1..phi_3.

    Raises:
        ValidationError: If epsilon is outside (0, 0.1]
    """
    return ThreeDiskAdmissible(epsilon)
