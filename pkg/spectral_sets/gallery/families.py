"""Operator families with bounded functional calculus but unbounded norm."""

import math
from typing import List, Optional, Sequence

import numpy as np

from spectral_sets.exceptions import ValidationError
from spectral_sets.gallery.base import ClaimOutcome, GalleryItem
from spectral_sets.matcalc import ScalarRational, eval_on_matrix, opnorm, spectrum

MAX_CENTER_MODULUS = 10.0

ANGLE_CHECKS = (0.1, 0.01, 0.001)


class DerivativeZeroFamily(GalleryItem):
    """T_n = z0 I + n N with N^2 = 0.

    For f analytic at z0, f(T_n) = f(z0) I + n f'(z0) N, so functions with a
    critical point at z0 stay bounded on the family while ||T_n|| grows.
    """

    name = "derivative-zero"
    claim = "f(T_n) = f(z0) I whenever f'(z0) = 0, while ||T_n - z0 I|| = n ||N||"

    def __init__(
        self,
        z0: complex,
        n: float,
        nu: Sequence[complex] = (1.0, 0.0),
        test_functions: Optional[Sequence[ScalarRational]] = None,
    ) -> None:
        z0 = complex(z0)
        if abs(z0) > MAX_CENTER_MODULUS:
            raise ValidationError(f"|z0| must be at most {MAX_CENTER_MODULUS}, got {abs(z0):.6g}")
        v = np.asarray(nu, dtype=complex)
        if v.shape != (2,) or not np.any(v):
            raise ValidationError("Nilpotent direction must be a non-zero vector of length 2")
        super().__init__(z0=z0, n=float(n), nu=[complex(x) for x in v])
        self.z0 = z0
        self.n = float(n)
        perp = np.array([-v[1].conjugate(), v[0].conjugate()])
        self.N = np.outer(v, perp.conj())
        self._test_functions = list(test_functions or [])

    def member(self, n: float) -> np.ndarray:
        """T_n = n (T - z0 I) + z0 I."""
        return self.z0 * np.eye(2, dtype=complex) + n * self.N

    @property
    def operator(self) -> np.ndarray:
        return self.member(self.n)

    @property
    def functions(self) -> List[ScalarRational]:
        square = ScalarRational.polynomial([self.z0**2, -2.0 * self.z0, 1.0])
        generic = ScalarRational.pole_power(self.z0 + 3.0) + ScalarRational.monomial(2)
        return [square, generic] + self._test_functions

    def calculus_residual(self, f: ScalarRational) -> float:
        """||f(T_n) - f(z0) I - n f'(z0) N||."""
        expected = f(self.z0) * np.eye(2) + self.n * f.derivative()(self.z0) * self.N
        return opnorm(eval_on_matrix(f, self.operator) - expected)

    def check(self) -> List[ClaimOutcome]:
        scale = (1.0 + abs(self.z0) + self.n * opnorm(self.N)) ** 2
        square, generic = self.functions[:2]
        outcomes = [
            ClaimOutcome.at_most("N^2 = 0", opnorm(self.N @ self.N), 1e-12 * (1.0 + opnorm(self.N)) ** 2),
            ClaimOutcome.at_most(
                "(z - z0)^2 vanishes on T_n", opnorm(eval_on_matrix(square, self.operator)), 1e-9 * scale
            ),
            ClaimOutcome.at_most(
                "||T_n - z0 I|| = n ||N||",
                abs(opnorm(self.operator - self.z0 * np.eye(2)) - self.n * opnorm(self.N)),
                1e-12 * scale,
            ),
            ClaimOutcome.at_most(
                "f(T_n) = f(z0) I + n f'(z0) N", self.calculus_residual(generic), 1e-9 * scale
            ),
        ]
        for k, f in enumerate(self._test_functions):
            slope = abs(f.derivative()(self.z0))
            if slope > 1e-8:
                outcomes.append(
                    ClaimOutcome.holds(f"test function {k} has f'(z0) = 0", False, slope=slope)
                )
                continue
            residual = opnorm(eval_on_matrix(f, self.operator) - f(self.z0) * np.eye(2))
            outcomes.append(ClaimOutcome.at_most(f"test function {k}: f(T_n) = f(z0) I", residual, 1e-10 * scale))
        return outcomes


def derivative_zero_family(
    z0: complex,
    n: float,
    nu: Sequence[complex] = (1.0, 0.0),
    test_functions: Optional[Sequence[ScalarRational]] = None,
) -> DerivativeZeroFamily:
    """Build T_n = z0 I + n N with N = nu nu_perp^* (so N^2 = 0).

    Raises:
        ValidationError: If nu is zero or |z0| exceeds 10
    """
    return DerivativeZeroFamily(z0, n, nu, test_functions)


class EigenvectorAngleExample(GalleryItem):
    """2x2 operator with fixed eigenvalues and eigenvectors at a given angle."""

    name = "eigenvector-angle"
    claim = "||T|| >= |z1 - z2| / (2 tan angle) while the spectrum stays {z1, z2}"

    def __init__(self, z1: complex, z2: complex, angle: float) -> None:
        z1, z2 = complex(z1), complex(z2)
        if z1 == z2:
            raise ValidationError("Eigenvalues must be distinct")
        if not 0.0 < angle <= math.pi / 2:
            raise ValidationError(f"Angle must lie in (0, pi/2], got {angle}")
        super().__init__(z1=z1, z2=z2, angle=float(angle))
        self.z1, self.z2, self.angle = z1, z2, float(angle)

    def member(self, angle: float) -> np.ndarray:
        """V diag(z1, z2) V^{-1} with V = [[1, cos angle], [0, sin angle]]."""
        return np.array(
            [[self.z1, (self.z2 - self.z1) / math.tan(angle)], [0.0, self.z2]], dtype=complex
        )

    @property
    def operator(self) -> np.ndarray:
        return self.member(self.angle)

    @property
    def eigenvectors(self) -> np.ndarray:
        return np.array([[1.0, math.cos(self.angle)], [0.0, math.sin(self.angle)]], dtype=complex)

    def lower_bound(self, angle: float) -> float:
        return abs(self.z1 - self.z2) / (2.0 * math.tan(angle))

    def check(self) -> List[ClaimOutcome]:
        T = self.operator
        scale = 1.0 + opnorm(T)
        V = self.eigenvectors
        expected = sorted([self.z1, self.z2], key=lambda z: (z.real, z.imag))
        found = sorted(spectrum(T), key=lambda z: (z.real, z.imag))
        outcomes = [
            ClaimOutcome.at_most(
                "spectrum is {z1, z2}",
                max(abs(a - b) for a, b in zip(found, expected)),
                1e-9 * scale,
            ),
            ClaimOutcome.at_most(
                "eigenvectors at the given angle",
                opnorm(T @ V - V @ np.diag([self.z1, self.z2])),
                1e-12 * scale,
            ),
        ]
        for angle in sorted(set(ANGLE_CHECKS + (self.angle,)), reverse=True):
            outcomes.append(
                ClaimOutcome.at_least(
                    f"||T|| >= |z1 - z2| / (2 tan {angle:g})",
                    opnorm(self.member(angle)),
                    self.lower_bound(angle),
                )
            )
        if math.isclose(self.angle, math.pi / 2):
            outcomes.append(
                ClaimOutcome.at_most(
                    "normal at a right angle: ||T|| = max |z_k|",
                    abs(opnorm(T) - max(abs(self.z1), abs(self.z2))),
                    1e-12 * scale,
                )
            )
        return outcomes


def eigenvector_angle_example(z1: complex, z2: complex, angle: float) -> EigenvectorAngleExample:
    """Build the operator with eigenvalues z1, z2 and eigenvectors (1, 0), (cos, sin).

    Raises:
        ValidationError: If z1 == z2 or the angle is outside (0, pi/2]
    """
    return EigenvectorAngleExample(z1, z2, angle)