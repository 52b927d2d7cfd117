"""Complex matrix primitives and the rational functional calculus.

Rational functions are stored in pole-residue form

    f(z) = c_0 + sum_{lambda, j} c_{lambda, j} p_lambda(z)^j,

with p_lambda(z) = (z - lambda)^{-1} for finite lambda and p_inf(z) = z.
The numerator/denominator form is derived from it on demand. Matrices are
plain complex ``numpy`` arrays validated by :func:`as_matrix`.
"""

import cmath
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
import numpy.polynomial.polynomial as P
import scipy.linalg
import scipy.signal

from spectral_sets.exceptions import (
    ContourError,
    PoleOnSpectrumError,
    SingularityError,
    ValidationError,
)
from spectral_sets.logging_config import format_matrix
from spectral_sets.refine import refine_by_doubling

logger = logging.getLogger(__name__)

INFINITY = complex(math.inf, 0.0)

# Relative distance (scaled by 1 + ||T||) below which a point counts as spectral
POLE_GUARD = 1e-12

# Contour points closer than this to an eigenvalue or pole are rejected
CONTOUR_GUARD = 1e-6

# Poles closer than this (relative) are merged into one
SAME_POLE_TOL = 1e-12

DEFAULT_QUADRATURE_POINTS = 512
MAX_QUADRATURE_POINTS = 8192
QUADRATURE_TOL = 1e-9
MIN_QUADRATURE_POINTS = 64

# Relative commutator size above which f(T) is reported as drifting
COMMUTATOR_TOL = 1e-10

# Quadrature nodes are processed in chunks to bound memory use
_QUADRATURE_CHUNK = 512

ExtendedComplex = Union[complex, float, int]
TermKey = Tuple[complex, int]


def is_infinity(z: ExtendedComplex) -> bool:
    """Return True if ``z`` is the point at infinity of the Riemann sphere."""
    return cmath.isinf(complex(z))


def encode_complex(z: ExtendedComplex) -> Union[List[float], str]:
    """Encode an extended complex number as ``[re, im]`` or ``"inf"``."""
    if is_infinity(z):
        return "inf"
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_complex(value: object) -> complex:
    """Decode ``[re, im]``, a real number or ``"inf"`` into a complex number.

    Raises:
        ValidationError: On any other shape
    """
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "∞"):
            return INFINITY
        raise ValidationError(f"Unrecognised complex literal {value!r}")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as e:
            raise ValidationError(f"Complex pair {value!r} is not numeric") from e
    raise ValidationError(f"Expected [re, im] or \"inf\", got {value!r}")


def _pole_sort_key(pole: complex) -> Tuple[int, float, float]:
    if is_infinity(pole):
        return (1, 0.0, 0.0)
    return (0, pole.real, pole.imag)


def _same_pole(a: complex, b: complex) -> bool:
    if is_infinity(a) or is_infinity(b):
        return is_infinity(a) and is_infinity(b)
    return abs(a - b) <= SAME_POLE_TOL * (1.0 + abs(a))


def as_matrix(data: object, name: str = "matrix") -> np.ndarray:
    """Validate and convert input to a square, finite complex matrix.

    Args:
        data: Array-like input
        name: Name used in error messages

    Returns:
        Complex ``numpy`` array of shape (n, n)

    Raises:
        ValidationError: If the input is not square or has non-finite entries
    """
    try:
        arr = np.array(data, dtype=complex)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name} is not a numeric array: {e}") from e

    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValidationError(f"{name} must be a non-empty square matrix, got shape {arr.shape}")

    bad = np.argwhere(~np.isfinite(arr))
    if bad.size:
        i, j = (int(v) for v in bad[0])
        raise ValidationError(
            f"{name} entry [{i}][{j}] is not finite",
            errors=[f"entries[{i}][{j}]"],
        )
    return arr


def opnorm(T: object) -> float:
    """Operator (spectral) norm: the largest singular value of ``T``."""
    T = as_matrix(T)
    return float(scipy.linalg.svdvals(T)[0])


def spectrum(T: object) -> np.ndarray:
    """Eigenvalues of ``T`` computed by a dense QR-type solver."""
    return scipy.linalg.eigvals(as_matrix(T))


def spectral_guard(T: np.ndarray) -> float:
    """Distance below which a point counts as lying on the spectrum of ``T``."""
    return POLE_GUARD * (1.0 + opnorm(T))


def hermitian_part(X: np.ndarray) -> np.ndarray:
    """Return (X + X*) / 2."""
    return 0.5 * (X + X.conj().T)


def resolvent(T: object, lam: ExtendedComplex) -> np.ndarray:
    """Evaluate p_lambda(T): (T - lambda I)^{-1}, or T itself when lambda is infinite.

    Args:
        T: Square matrix
        lam: Extended complex point

    Returns:
        The resolvent matrix

    Raises:
        SingularityError: If lambda lies within the spectral guard of an eigenvalue
    """
    T = as_matrix(T)
    if is_infinity(lam):
        return T.copy()

    lam = complex(lam)
    guard = spectral_guard(T)
    gap = float(np.min(np.abs(spectrum(T) - lam)))
    if gap <= guard:
        raise SingularityError(
            f"Point {lam} lies within {guard:.1e} of the spectrum",
            point=lam,
        )

    n = T.shape[0]
    try:
        return np.linalg.solve(T - lam * np.eye(n), np.eye(n, dtype=complex))
    except np.linalg.LinAlgError as e:
        raise SingularityError(f"T - {lam} I is singular", point=lam) from e


def pole_size(T: object, poles: Sequence[ExtendedComplex]) -> float:
    """The Lambda-pole size of T: max over the pole set of ||p_lambda(T)||.

    Args:
        T: Square matrix
        poles: Non-empty pole set

    Returns:
        Maximum resolvent norm over the pole set
    """
    if not poles:
        raise ValidationError("Pole set must be non-empty")
    T = as_matrix(T)
    return max(opnorm(resolvent(T, lam)) for lam in poles)


@lru_cache(maxsize=4096)
def _pole_pair(
    lam: complex, i: int, mu: complex, j: int
) -> Tuple[Tuple[Optional[TermKey], complex], ...]:
    """Partial fractions of p_lam^i * p_mu^j for distinct finite poles.

    Key ``None`` stands for the constant function 1.
    """
    if i == 0 and j == 0:
        return ((None, 1.0 + 0j),)
    if i == 0:
        return (((mu, j), 1.0 + 0j),)
    if j == 0:
        return (((lam, i), 1.0 + 0j),)

    delta = lam - mu
    out: Dict[Optional[TermKey], complex] = defaultdict(complex)
    for key, c in _pole_pair(lam, i, mu, j - 1):
        out[key] += c / delta
    for key, c in _pole_pair(lam, i - 1, mu, j):
        out[key] -= c / delta
    return tuple(out.items())


@lru_cache(maxsize=4096)
def _monomial_pole(
    m: int, lam: complex, j: int
) -> Tuple[Tuple[Optional[TermKey], complex], ...]:
    """Partial fractions of z^m * p_lam^j for a finite pole lam."""
    if m == 0:
        if j == 0:
            return ((None, 1.0 + 0j),)
        return (((lam, j), 1.0 + 0j),)
    if j == 0:
        return (((INFINITY, m), 1.0 + 0j),)

    # z p^j = p^{j-1} + lam p^j
    out: Dict[Optional[TermKey], complex] = defaultdict(complex)
    for key, c in _monomial_pole(m - 1, lam, j - 1):
        out[key] += c
    for key, c in _monomial_pole(m - 1, lam, j):
        out[key] += lam * c
    return tuple(out.items())


def _basis_product(
    a: TermKey, b: TermKey
) -> Tuple[Tuple[Optional[TermKey], complex], ...]:
    (la, ja), (lb, jb) = a, b
    if _same_pole(la, lb):
        return (((la, ja + jb), 1.0 + 0j),)
    if is_infinity(la):
        return _monomial_pole(ja, lb, jb)
    if is_infinity(lb):
        return _monomial_pole(jb, la, ja)
    return _pole_pair(la, ja, lb, jb)


class ScalarRational:
    """Scalar rational function in pole-residue form.

    Terms are keyed by ``(pole, power)``; a pole equal to :data:`INFINITY`
    stands for the monomial z**power.
    """

    def __init__(
        self,
        constant: complex = 0.0,
        terms: Optional[
            Union[Mapping[TermKey, complex], Iterable[Tuple[TermKey, complex]]]
        ] = None,
    ) -> None:
        """Initialize the function.

        Args:
            constant: Constant term c_0
            terms: Mapping or iterable of ((pole, power), coefficient) pairs

        Raises:
            ValidationError: On non-positive powers or non-finite coefficients
        """
        self.constant = complex(constant)
        if not cmath.isfinite(self.constant):
            raise ValidationError("Constant term must be finite")

        items: Iterable[Tuple[TermKey, complex]]
        if terms is None:
            items = ()
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms

        merged: Dict[TermKey, complex] = {}
        for (pole, power), coeff in items:
            power = int(power)
            coeff = complex(coeff)
            if power < 1:
                raise ValidationError(f"Term powers must be >= 1, got {power}")
            if not cmath.isfinite(coeff):
                raise ValidationError(f"Coefficient of pole {pole} is not finite")
            pole = complex(pole)
            if cmath.isnan(pole):
                raise ValidationError("Pole must not be NaN")
            if is_infinity(pole):
                pole = INFINITY
            for known, _ in merged:
                if _same_pole(known, pole):
                    pole = known
                    break
            key = (pole, power)
            merged[key] = merged.get(key, 0j) + coeff

        self._terms: Dict[TermKey, complex] = {
            key: c for key, c in merged.items() if c != 0
        }

    @classmethod
    def constant_function(cls, value: complex) -> "ScalarRational":
        """The constant function."""
        return cls(value)

    @classmethod
    def pole_power(
        cls, pole: ExtendedComplex, power: int = 1, coeff: complex = 1.0
    ) -> "ScalarRational":
        """coeff * p_pole(z)**power."""
        return cls(0.0, {(complex(pole), power): coeff})

    @classmethod
    def monomial(cls, power: int, coeff: complex = 1.0) -> "ScalarRational":
        """coeff * z**power."""
        if power == 0:
            return cls(coeff)
        return cls.pole_power(INFINITY, power, coeff)

    @classmethod
    def polynomial(cls, coeffs: Sequence[complex]) -> "ScalarRational":
        """Polynomial from ascending coefficients."""
        coeffs = list(coeffs) or [0.0]
        return cls(
            coeffs[0],
            [((INFINITY, j), c) for j, c in enumerate(coeffs) if j > 0],
        )

    @classmethod
    def from_polynomials(
        cls, numerator: Sequence[complex], denominator: Sequence[complex]
    ) -> "ScalarRational":
        """Build the pole-residue form from ascending numerator/denominator coefficients.

        Residues are extracted at each pole with multiplicity.

        Raises:
            ValidationError: If the denominator is identically zero
        """
        num = np.trim_zeros(np.asarray(numerator, dtype=complex), "b")
        den = np.trim_zeros(np.asarray(denominator, dtype=complex), "b")
        if den.size == 0:
            raise ValidationError("Denominator must not be identically zero")
        if num.size == 0:
            return cls(0.0)
        if den.size == 1:
            return cls.polynomial(num / den[0])

        residues, poles, direct = scipy.signal.residue(num[::-1], den[::-1])
        terms: List[Tuple[TermKey, complex]] = []
        previous: Optional[complex] = None
        power = 0
        for r, p in zip(residues, poles):
            if previous is not None and np.isclose(p, previous, rtol=1e-8, atol=1e-12):
                power += 1
            else:
                power = 1
            previous = p
            terms.append(((complex(p), power), complex(r)))

        direct = np.atleast_1d(np.asarray(direct, dtype=complex))[::-1]
        constant = direct[0] if direct.size else 0.0
        terms.extend(((INFINITY, j), c) for j, c in enumerate(direct) if j > 0)
        return cls(constant, terms)

    @property
    def terms(self) -> List[Tuple[TermKey, complex]]:
        """Terms sorted by pole (finite poles first) then power."""
        return sorted(
            self._terms.items(),
            key=lambda item: (_pole_sort_key(item[0][0]), item[0][1]),
        )

    @property
    def poles(self) -> List[complex]:
        """Distinct finite poles."""
        found: List[complex] = []
        for pole, _ in self._terms:
            if not is_infinity(pole) and not any(_same_pole(pole, q) for q in found):
                found.append(pole)
        return sorted(found, key=_pole_sort_key)

    @property
    def has_polynomial_part(self) -> bool:
        """True if the function has monomial terms z**j, j >= 1."""
        return any(is_infinity(pole) for pole, _ in self._terms)

    def multiplicity(self, pole: ExtendedComplex) -> int:
        """Highest power at which ``pole`` appears (0 if absent)."""
        pole = complex(pole)
        powers = [j for (q, j) in self._terms if _same_pole(q, pole)]
        return max(powers, default=0)

    def is_zero(self) -> bool:
        """True if the function is identically zero."""
        return self.constant == 0 and not self._terms

    def restrict(self, poles: Iterable[ExtendedComplex], keep_constant: bool) -> "ScalarRational":
        """The part of the function carried by the given poles.

        Args:
            poles: Poles (finite or infinite) whose terms are kept
            keep_constant: Whether the constant term is kept

        Returns:
            New function holding only the selected terms
        """
        selected = [complex(p) for p in poles]
        return ScalarRational(
            self.constant if keep_constant else 0.0,
            [
                (key, c)
                for key, c in self._terms.items()
                if any(_same_pole(key[0], q) for q in selected)
            ],
        )

    def __call__(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        """Evaluate pointwise (vectorized over arrays).

        Raises:
            SingularityError: If a point lies on a pole
        """
        z_arr = np.asarray(z, dtype=complex)
        values = np.full(z_arr.shape, self.constant, dtype=complex)
        for (pole, power), c in self._terms.items():
            if is_infinity(pole):
                values = values + c * z_arr**power
                continue
            diff = z_arr - pole
            if np.any(np.abs(diff) <= POLE_GUARD * (1.0 + abs(pole))):
                raise SingularityError(f"Evaluation at the pole {pole}", point=pole)
            values = values + c / diff**power
        if values.ndim == 0:
            return complex(values)
        return values

    @cached_property
    def _polynomials(self) -> Tuple[np.ndarray, np.ndarray]:
        multiplicity = {pole: self.multiplicity(pole) for pole in self.poles}

        def roots_except(pole: Optional[complex], drop: int) -> List[complex]:
            roots: List[complex] = []
            for q, m in multiplicity.items():
                keep = m - drop if pole is not None and _same_pole(q, pole) else m
                roots.extend([q] * keep)
            return roots

        den = P.polyfromroots(roots_except(None, 0)).astype(complex)
        num = self.constant * den
        for (pole, power), c in self._terms.items():
            if is_infinity(pole):
                mono = np.zeros(power + 1, dtype=complex)
                mono[power] = 1.0
                num = P.polyadd(num, c * P.polymul(den, mono))
            else:
                quotient = P.polyfromroots(roots_except(pole, power)).astype(complex)
                num = P.polyadd(num, c * quotient)
        return np.asarray(num, dtype=complex), np.asarray(den, dtype=complex)

    def as_polynomials(self) -> Tuple[np.ndarray, np.ndarray]:
        """Ascending numerator and (monic) denominator coefficients."""
        num, den = self._polynomials
        return num.copy(), den.copy()

    def ratio_values(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        """Evaluate through the numerator/denominator representation."""
        num, den = self._polynomials
        z_arr = np.asarray(z, dtype=complex)
        values = P.polyval(z_arr, num) / P.polyval(z_arr, den)
        if np.ndim(values) == 0:
            return complex(values)
        return values

    def representation_error(self, samples: int = 32, seed: int = 0) -> float:
        """Largest relative disagreement of the two representations on random points.

        Points are drawn in a disk comfortably containing all poles, away from them.
        """
        rng = np.random.default_rng(seed)
        poles = np.array(self.poles, dtype=complex)
        scale = 2.0 * (1.0 + (float(np.max(np.abs(poles))) if poles.size else 0.0))
        points: List[complex] = []
        while len(points) < samples:
            z = scale * complex(*rng.uniform(-1.0, 1.0, 2))
            if poles.size == 0 or float(np.min(np.abs(poles - z))) > 1e-3 * scale:
                points.append(z)
        z_arr = np.array(points)
        direct = np.asarray(self(z_arr))
        ratio = np.asarray(self.ratio_values(z_arr))
        return float(np.max(np.abs(direct - ratio) / np.maximum(1.0, np.abs(direct))))

    def derivative(self) -> "ScalarRational":
        """The derivative, in pole-residue form."""
        terms: List[Tuple[TermKey, complex]] = []
        constant = 0j
        for (pole, power), c in self._terms.items():
            if is_infinity(pole):
                if power == 1:
                    constant += c
                else:
                    terms.append(((INFINITY, power - 1), power * c))
            else:
                terms.append(((pole, power + 1), -power * c))
        return ScalarRational(constant, terms)

    def compose_affine(self, omega: complex, shift: complex) -> "ScalarRational":
        """Return z -> f(omega * z + shift).

        Raises:
            ValidationError: If omega is zero
        """
        omega = complex(omega)
        shift = complex(shift)
        if omega == 0:
            raise ValidationError("Affine map must have non-zero slope")

        constant = self.constant
        terms: List[Tuple[TermKey, complex]] = []
        for (pole, power), c in self._terms.items():
            if is_infinity(pole):
                for k in range(power + 1):
                    coeff = c * math.comb(power, k) * omega**k * shift ** (power - k)
                    if k == 0:
                        constant += coeff
                    else:
                        terms.append(((INFINITY, k), coeff))
            else:
                terms.append((((pole - shift) / omega, power), c * omega ** (-power)))
        return ScalarRational(constant, terms)

    def _coerce(self, other: object) -> "ScalarRational":
        if isinstance(other, ScalarRational):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return ScalarRational(complex(other))
        raise TypeError(f"Cannot combine ScalarRational with {type(other).__name__}")

    def __add__(self, other: object) -> "ScalarRational":
        other = self._coerce(other)
        return ScalarRational(
            self.constant + other.constant,
            list(self._terms.items()) + list(other._terms.items()),
        )

    __radd__ = __add__

    def __neg__(self) -> "ScalarRational":
        return ScalarRational(-self.constant, [(k, -c) for k, c in self._terms.items()])

    def __sub__(self, other: object) -> "ScalarRational":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "ScalarRational":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "ScalarRational":
        other = self._coerce(other)
        constant = self.constant * other.constant
        acc: List[Tuple[TermKey, complex]] = []
        acc.extend((k, c * other.constant) for k, c in self._terms.items())
        acc.extend((k, c * self.constant) for k, c in other._terms.items())
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                for key, c in _basis_product(ka, kb):
                    if key is None:
                        constant += ca * cb * c
                    else:
                        acc.append((key, ca * cb * c))
        return ScalarRational(constant, acc)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "ScalarRational":
        if not isinstance(other, (int, float, complex, np.number)):
            return NotImplemented
        return self * (1.0 / complex(other))

    def __pow__(self, exponent: int) -> "ScalarRational":
        if exponent < 0:
            raise ValueError("Only non-negative integer powers are supported")
        result = ScalarRational(1.0)
        for _ in range(exponent):
            result = result * self
        return result

    def __repr__(self) -> str:
        parts = [f"{self.constant:.6g}"]
        for (pole, power), c in self.terms:
            base = "z" if is_infinity(pole) else f"p({pole:.6g})"
            parts.append(f"({c:.6g})*{base}^{power}")
        return f"ScalarRational({' + '.join(parts)})"


def eval_scalar(f: ScalarRational, z: complex) -> complex:
    """Evaluate ``f`` at a single point.

    Raises:
        SingularityError: If ``z`` is a pole of ``f``
    """
    return complex(f(complex(z)))


def eval_on_matrix(f: ScalarRational, T: object) -> np.ndarray:
    """Evaluate f(T) termwise: c_0 I + sum c_{lambda,j} p_lambda(T)^j.

    Args:
        f: Rational function
        T: Square matrix

    Returns:
        The matrix f(T)

    Raises:
        PoleOnSpectrumError: If a finite pole of ``f`` lies on the spectrum of ``T``
    """
    T = as_matrix(T)
    n = T.shape[0]
    result = f.constant * np.eye(n, dtype=complex)
    if not f.terms:
        return result

    eigenvalues = spectrum(T)
    guard = spectral_guard(T)
    resolvents: Dict[complex, np.ndarray] = {}
    for (pole, power), c in f.terms:
        if is_infinity(pole):
            result = result + c * np.linalg.matrix_power(T, power)
            continue
        if pole not in resolvents:
            if float(np.min(np.abs(eigenvalues - pole))) <= guard:
                raise PoleOnSpectrumError(
                    f"Pole {pole} of f lies on the spectrum of T", point=pole
                )
            resolvents[pole] = resolvent(T, pole)
        result = result + c * np.linalg.matrix_power(resolvents[pole], power)

    drift = opnorm(result @ T - T @ result)
    if drift > COMMUTATOR_TOL * (1.0 + opnorm(result)) * (1.0 + opnorm(T)):
        logger.warning(f"f(T) fails to commute with T: commutator norm {drift:.3e}")
    logger.debug(f"f(T) = {format_matrix(result)}")
    return result


@dataclass(frozen=True)
class Contour:
    """Union of oriented circles used for Cauchy-Riesz quadrature."""

    circles: Tuple[Tuple[complex, float, int], ...]
    points: int = DEFAULT_QUADRATURE_POINTS

    def __post_init__(self) -> None:
        circles = tuple(
            (complex(c), float(r), int(o)) for c, r, o in self.circles
        )
        object.__setattr__(self, "circles", circles)
        if not circles:
            raise ValidationError("Contour needs at least one circle")
        if self.points < MIN_QUADRATURE_POINTS:
            raise ValidationError(
                f"Contour needs at least {MIN_QUADRATURE_POINTS} points per circle"
            )
        for c, r, o in circles:
            if r <= 0:
                raise ValidationError(f"Circle radius must be positive, got {r}")
            if o not in (1, -1):
                raise ValidationError(f"Circle orientation must be +1 or -1, got {o}")
        for i, (c1, r1, _) in enumerate(circles):
            for c2, r2, _ in circles[i + 1:]:
                d = abs(c1 - c2)
                if not (d > r1 + r2 or d < abs(r1 - r2)):
                    raise ValidationError("Contour circles must be pairwise disjoint")

    @classmethod
    def circle(
        cls,
        center: complex = 0.0,
        radius: float = 1.0,
        points: int = DEFAULT_QUADRATURE_POINTS,
        orientation: int = 1,
    ) -> "Contour":
        """Single circle contour."""
        return cls(((center, radius, orientation),), points)

    def winding(self, z: complex) -> int:
        """Winding number of the contour around ``z``."""
        return sum(o for c, r, o in self.circles if abs(z - c) < r)

    def distance(self, z: complex) -> float:
        """Distance from ``z`` to the contour."""
        return min(abs(abs(z - c) - r) for c, r, _ in self.circles)


def _cauchy_quadrature(
    points: int, f: ScalarRational, T: np.ndarray, contour: Contour
) -> np.ndarray:
    n = T.shape[0]
    identity = np.eye(n, dtype=complex)
    total = np.zeros((n, n), dtype=complex)
    theta = 2.0 * np.pi * np.arange(points) / points
    for center, radius, orientation in contour.circles:
        direction = np.exp(1j * theta)
        nodes = center + radius * direction
        weights = orientation * np.asarray(f(nodes)) * radius * direction / points
        for start in range(0, points, _QUADRATURE_CHUNK):
            chunk = slice(start, start + _QUADRATURE_CHUNK)
            shifted = nodes[chunk, None, None] * identity - T
            inverses = np.linalg.inv(shifted)
            total += np.tensordot(weights[chunk], inverses, axes=(0, 0))
    return total


def eval_on_matrix_cauchy(
    f: ScalarRational,
    T: object,
    contour: Contour,
    adaptive: bool = True,
    tol: float = QUADRATURE_TOL,
) -> np.ndarray:
    """Evaluate f(T) by the Cauchy-Riesz integral with trapezoidal quadrature.

    Args:
        f: Rational function, analytic on and inside the contour
        T: Square matrix
        contour: Contour winding once around every eigenvalue
        adaptive: Double the point count until successive results differ by < tol
        tol: Convergence tolerance of the adaptive loop

    Returns:
        Approximation of f(T)

    Raises:
        ContourError: If the contour passes near an eigenvalue, fails to wind
            once around one, or encloses a pole of ``f``
    """
    T = as_matrix(T)
    for eigenvalue in spectrum(T):
        if contour.distance(eigenvalue) <= CONTOUR_GUARD:
            raise ContourError(
                f"Contour passes within {CONTOUR_GUARD:.0e} of eigenvalue {eigenvalue}"
            )
        if contour.winding(eigenvalue) != 1:
            raise ContourError(f"Contour must wind once around eigenvalue {eigenvalue}")
    for pole in f.poles:
        if contour.distance(pole) <= CONTOUR_GUARD or contour.winding(pole) != 0:
            raise ContourError(f"Contour encloses or touches the pole {pole}")

    if not adaptive:
        return _cauchy_quadrature(contour.points, f, T, contour)

    refined = refine_by_doubling(
        initial_points=contour.points,
        max_points=max(MAX_QUADRATURE_POINTS, contour.points),
        tol=tol,
    )(_cauchy_quadrature)
    return refined(f, T, contour)


class MatrixRational:
    """Square s x s matrix of scalar rational functions."""

    def __init__(self, entries: Sequence[Sequence[object]]) -> None:
        """Initialize from a square grid of entries.

        Args:
            entries: Rows of ScalarRational (numbers are promoted to constants)

        Raises:
            ValidationError: If the grid is empty or not square
        """
        rows = [list(row) for row in entries]
        s = len(rows)
        if s == 0 or any(len(row) != s for row in rows):
            raise ValidationError("Matrix rational function must be a non-empty square grid")
        self._entries: List[List[ScalarRational]] = [
            [e if isinstance(e, ScalarRational) else ScalarRational(complex(e)) for e in row]  # type: ignore[arg-type]
            for row in rows
        ]

    @classmethod
    def scalar(cls, f: ScalarRational) -> "MatrixRational":
        """Wrap a scalar function as a 1 x 1 matrix function."""
        return cls([[f]])

    @classmethod
    def identity(cls, s: int) -> "MatrixRational":
        """Constant identity of size s."""
        return cls([[1.0 if i == j else 0.0 for j in range(s)] for i in range(s)])

    @classmethod
    def diagonal(cls, functions: Sequence[ScalarRational]) -> "MatrixRational":
        """Diagonal matrix function."""
        s = len(functions)
        return cls(
            [[functions[i] if i == j else ScalarRational() for j in range(s)] for i in range(s)]
        )

    @property
    def s(self) -> int:
        """Matrix size."""
        return len(self._entries)

    @property
    def entries(self) -> List[List[ScalarRational]]:
        """Copy of the entry grid."""
        return [list(row) for row in self._entries]

    @property
    def poles(self) -> List[complex]:
        """Union of the finite poles of all entries."""
        found: List[complex] = []
        for row in self._entries:
            for f in row:
                for pole in f.poles:
                    if not any(_same_pole(pole, q) for q in found):
                        found.append(pole)
        return sorted(found, key=_pole_sort_key)

    @property
    def has_polynomial_part(self) -> bool:
        """True if any entry has monomial terms."""
        return any(f.has_polynomial_part for row in self._entries for f in row)

    def __getitem__(self, index: Tuple[int, int]) -> ScalarRational:
        i, j = index
        return self._entries[i][j]

    def __call__(self, z: Union[complex, np.ndarray]) -> np.ndarray:
        """Values at ``z``: shape (s, s) for a scalar, z.shape + (s, s) for arrays."""
        z_arr = np.asarray(z, dtype=complex)
        values = np.empty(z_arr.shape + (self.s, self.s), dtype=complex)
        for i, row in enumerate(self._entries):
            for j, f in enumerate(row):
                values[..., i, j] = f(z_arr)
        return values

    def __repr__(self) -> str:
        return f"MatrixRational(s={self.s}, poles={self.poles})"


def eval_matrix_rational(F: MatrixRational, T: object) -> np.ndarray:
    """Evaluate F(T) as the block matrix [f_ij(T)] acting on H (x) C^s.

    Raises:
        PoleOnSpectrumError: If a pole of any entry lies on the spectrum of ``T``
    """
    T = as_matrix(T)
    blocks = [[eval_on_matrix(f, T) for f in row] for row in F.entries]
    return np.block(blocks)
