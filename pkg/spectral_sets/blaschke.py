"""Finite Blaschke products, model-space bases and the similarity to a contraction."""

import cmath
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, NamedTuple, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from spectral_sets.exceptions import (
    NumericalError,
    PreconditionError,
    SingularityError,
    ValidationError,
)
from spectral_sets.logging_config import format_matrix
from spectral_sets.matcalc import (
    ScalarRational,
    as_matrix,
    eval_on_matrix,
    opnorm,
    spectrum,
)

logger = logging.getLogger(__name__)

# Zeros must satisfy |lambda| <= 1 - ZERO_MARGIN
ZERO_MARGIN = 1e-12

# Slack allowed in ||B(T)|| <= 1 and in the spectral radius precondition
CONTRACTION_TOL = 1e-10

# Smallest singular value of s_1(T) accepted as invertible
MIN_SINGULAR_VALUE = 1e-10

GRAM_POINTS = 4096

NORMALIZATIONS = ("plain", "mascioni")


@dataclass(frozen=True)
class BlaschkeProduct:
    """B(z) = e^{i theta} z^power prod_j b_{lambda_j}(z).

    Plain factors are (z - lambda)/(1 - conj(lambda) z); the alternative
    normalization multiplies each factor with lambda != 0 by
    -conj(lambda)/|lambda|. Zeros at the origin always use the plain factor z.
    """

    theta: float = 0.0
    zeros: Tuple[complex, ...] = ()
    power: int = 0
    normalization: str = "plain"

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        object.__setattr__(self, "theta", float(self.theta))
        if self.power < 0:
            raise ValidationError(f"Power of z must be non-negative, got {self.power}")
        if self.normalization not in NORMALIZATIONS:
            raise ValidationError(
                f"Normalization must be one of {NORMALIZATIONS}, got {self.normalization!r}"
            )
        for k, lam in enumerate(self.zeros):
            if not abs(lam) <= 1.0 - ZERO_MARGIN:
                raise ValidationError(
                    f"Blaschke zero {lam} must satisfy |lambda| < 1 (got {abs(lam):.15g})",
                    errors=[f"zeros[{k}]"],
                )

    @property
    def all_zeros(self) -> Tuple[complex, ...]:
        """Zeros with multiplicity, origin zeros from the power first."""
        return (0j,) * self.power + self.zeros

    @property
    def degree(self) -> int:
        return len(self.all_zeros)

    @property
    def constant(self) -> complex:
        """Unimodular constant multiplying the plain product."""
        c = cmath.exp(1j * self.theta)
        if self.normalization == "mascioni":
            for lam in self.zeros:
                if lam != 0:
                    c *= -lam.conjugate() / abs(lam)
        return c

    def __call__(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        """Evaluate B (vectorized).

        Raises:
            SingularityError: Near a pole 1/conj(lambda)
        """
        z_arr = np.asarray(z, dtype=complex)
        value = np.full(z_arr.shape, self.constant, dtype=complex)
        for lam in self.all_zeros:
            den = 1.0 - lam.conjugate() * z_arr
            if np.any(np.abs(den) <= 1e-12):
                raise SingularityError(
                    f"Evaluation at the pole {1.0 / lam.conjugate()}", point=1.0 / lam.conjugate()
                )
            value = value * (z_arr - lam) / den
        if value.ndim == 0:
            return complex(value)
        return value

    @cached_property
    def _rational(self) -> ScalarRational:
        result = ScalarRational(self.constant)
        for lam in self.all_zeros:
            result = result * _plain_factor(lam)
        return result

    def to_rational(self) -> ScalarRational:
        """B as a scalar rational function in pole-residue form."""
        return self._rational

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "power": self.power,
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "normalization": self.normalization,
        }


def _plain_factor(lam: complex) -> ScalarRational:
    """(z - lambda) / (1 - conj(lambda) z) in pole-residue form."""
    if lam == 0:
        return ScalarRational.monomial(1)
    pole = 1.0 / lam.conjugate()
    # -(1/conj(lam)) (z - lam)/(z - pole) = -(1/conj(lam)) (1 + (pole - lam) p_pole)
    scale = -1.0 / lam.conjugate()
    return ScalarRational(scale, {(pole, 1): scale * (pole - lam)})


def _kernel_factor(lam: complex) -> ScalarRational:
    """1 / (1 - conj(lambda) z) in pole-residue form."""
    if lam == 0:
        return ScalarRational(1.0)
    return ScalarRational.pole_power(1.0 / lam.conjugate(), 1, -1.0 / lam.conjugate())


def eval_blaschke(B: BlaschkeProduct, z: complex) -> complex:
    """Pointwise value of B."""
    return complex(B(complex(z)))


def _check_spectrum(T: np.ndarray) -> None:
    radius = float(np.max(np.abs(spectrum(T))))
    if radius > 1.0 + CONTRACTION_TOL:
        raise PreconditionError(
            f"Spectrum must lie in the closed unit disk (spectral radius {radius:.6g})"
        )


def _factor_on_matrix(T: np.ndarray, lam: complex) -> np.ndarray:
    n = T.shape[0]
    identity = np.eye(n, dtype=complex)
    try:
        return (T - lam * identity) @ np.linalg.solve(identity - lam.conjugate() * T, identity)
    except np.linalg.LinAlgError as e:
        raise SingularityError(
            f"I - conj({lam}) T is singular", point=1.0 / lam.conjugate()
        ) from e


def blaschke_on_matrix(B: BlaschkeProduct, T: object) -> np.ndarray:
    """Evaluate B(T) as the ordered product of factor matrices.

    The factors commute; the forward and reverse products are compared and a
    warning is logged if they drift apart by more than 1e-10.

    Raises:
        PreconditionError: If the spectrum leaves the closed unit disk
    """
    T = as_matrix(T)
    _check_spectrum(T)
    n = T.shape[0]
    factors = [_factor_on_matrix(T, lam) for lam in B.all_zeros]

    forward = np.eye(n, dtype=complex)
    for F in factors:
        forward = forward @ F
    reverse = np.eye(n, dtype=complex)
    for F in reversed(factors):
        reverse = reverse @ F

    drift = opnorm(forward - reverse)
    if drift > CONTRACTION_TOL * (1.0 + opnorm(forward)):
        logger.warning(f"Blaschke factors fail to commute on T: drift {drift:.3e}")

    result = B.constant * forward
    logger.debug(f"B(T) = {format_matrix(result)}")
    return result


@dataclass(frozen=True)
class ModelBasis:
    """Orthonormal basis s_1..s_n of the model space of a Blaschke product."""

    zeros: Tuple[complex, ...]
    functions: Tuple[ScalarRational, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.functions)

    def values(self, z: Union[complex, np.ndarray]) -> np.ndarray:
        """Array of shape (n,) + z.shape with s_k(z) along the first axis."""
        return np.stack([np.asarray(f(z)) for f in self.functions])

    def gram(self, points: int = GRAM_POINTS) -> np.ndarray:
        """Gram matrix in the Hardy inner product by circle quadrature."""
        z = np.exp(2j * np.pi * np.arange(points) / points)
        V = self.values(z)
        return (V.conj() @ V.T) / points

    def gram_error(self, points: int = GRAM_POINTS) -> float:
        """Max deviation of the Gram matrix from the identity."""
        G = self.gram(points)
        return float(np.max(np.abs(G - np.eye(len(self)))))


def model_basis(B: BlaschkeProduct) -> ModelBasis:
    """Build s_k(z) = sqrt(1 - |lambda_k|^2)/(1 - conj(lambda_k) z) prod_{j<k} b_j(z).

    Plain factors are used whatever the normalization of B.

    Raises:
        ValidationError: If B has no zeros
    """
    zeros = B.all_zeros
    if not zeros:
        raise ValidationError("Model basis needs a Blaschke product with at least one zero")

    functions: List[ScalarRational] = []
    prefix = ScalarRational(1.0)
    for lam in zeros:
        functions.append(_kernel_factor(lam) * prefix * math.sqrt(1.0 - abs(lam) ** 2))
        prefix = prefix * _plain_factor(lam)
    return ModelBasis(zeros=zeros, functions=tuple(functions))


def model_basis_on_matrix(B: BlaschkeProduct, T: object) -> List[np.ndarray]:
    """The operators s_k(T), k = 1..n.

    Raises:
        PreconditionError: If the spectrum leaves the closed unit disk
    """
    T = as_matrix(T)
    _check_spectrum(T)
    return [eval_on_matrix(f, T) for f in model_basis(B).functions]


def kernel_identity_residual(B: BlaschkeProduct, z: complex, w: complex) -> float:
    """|1 - conj(B(w)) B(z) - (1 - conj(w) z) sum_k conj(s_k(w)) s_k(z)|."""
    basis = model_basis(B)
    z, w = complex(z), complex(w)
    left = 1.0 - eval_blaschke(B, w).conjugate() * eval_blaschke(B, z)
    right = (1.0 - w.conjugate() * z) * complex(np.sum(basis.values(w).conj() * basis.values(z)))
    return abs(left - right)


def defect_identity_residual(B: BlaschkeProduct, T: object, h: Sequence[complex]) -> float:
    """|sum ||s_k(T)h||^2 - sum ||s_k(T)Th||^2 - (||h||^2 - ||B(T)h||^2)|."""
    T = as_matrix(T)
    h = np.asarray(h, dtype=complex)
    if h.shape != (T.shape[0],):
        raise ValidationError(f"Vector must have length {T.shape[0]}, got shape {h.shape}")
    s_ops = model_basis_on_matrix(B, T)
    Th = T @ h
    left = sum(np.linalg.norm(S @ h) ** 2 - np.linalg.norm(S @ Th) ** 2 for S in s_ops)
    right = np.linalg.norm(h) ** 2 - np.linalg.norm(blaschke_on_matrix(B, T) @ h) ** 2
    return float(abs(left - right))


class SimilarityResult(NamedTuple):
    """S, ||S T S^{-1}|| and the condition number of S."""

    S: np.ndarray
    contraction_norm: float
    condition_number: float


def similarity_transform(B: BlaschkeProduct, T: object) -> SimilarityResult:
    """Build S = M^{1/2}, M = sum_k s_k(T)* s_k(T), making S T S^{-1} a contraction.

    Raises:
        PreconditionError: If ||B(T)|| > 1 + 1e-10 or the spectrum leaves the disk
        NumericalError: If s_1(T) (hence M) is numerically singular
    """
    T = as_matrix(T)
    norm_b = opnorm(blaschke_on_matrix(B, T))
    if norm_b > 1.0 + CONTRACTION_TOL:
        raise PreconditionError(f"||B(T)|| = {norm_b:.12g} exceeds 1")

    s_ops = model_basis_on_matrix(B, T)
    smallest = float(scipy.linalg.svdvals(s_ops[0])[-1])
    if smallest < MIN_SINGULAR_VALUE:
        raise NumericalError(f"s_1(T) is numerically singular (sigma_min = {smallest:.3e})")

    M = sum(S.conj().T @ S for S in s_ops)
    eigenvalues, V = scipy.linalg.eigh(0.5 * (M + M.conj().T))
    if eigenvalues[0] <= 0:
        raise NumericalError(f"M is not positive definite (min eigenvalue {eigenvalues[0]:.3e})")
    root = np.sqrt(eigenvalues)
    S = (V * root) @ V.conj().T
    S_inv = (V / root) @ V.conj().T
    contraction = opnorm(S @ T @ S_inv)
    condition = float(root[-1] / root[0])
    logger.debug(f"Similarity: ||S T S^-1|| = {contraction:.12g}, cond(S) = {condition:.3e}")
    return SimilarityResult(S=S, contraction_norm=contraction, condition_number=condition)
