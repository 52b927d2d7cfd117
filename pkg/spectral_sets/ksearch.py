"""Von Neumann ratios, K-spectral lower bounds and the separation of singularities.

The search maximizes ||F(T)|| / max_{z in boundary} ||F(z)|| over functions
spanned by a pole basis. The result is only a lower bound for the constant K
at the searched matrix size s.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import minimize_scalar

from spectral_sets.exceptions import DomainError, NumericalError, ValidationError
from spectral_sets.geometry import (
    BOUNDARY_TOL,
    DiskIntersection,
    Domain,
    DomainLike,
    PiecewiseCircularDomain,
    as_domain,
    pole_set_valid,
)
from spectral_sets.matcalc import (
    ExtendedComplex,
    MatrixRational,
    ScalarRational,
    as_matrix,
    encode_complex,
    eval_matrix_rational,
    eval_on_matrix,
    is_infinity,
    opnorm,
    spectrum,
)

logger = logging.getLogger(__name__)

# Halving line-search steps, relative to the largest coefficient
STEP_SCHEDULE: Tuple[float, ...] = tuple(0.5 / 2**k for k in range(13))

# Grid local maxima refined by bounded scalar search
MAX_REFINED_PEAKS = 16

MAX_MATRIX_SIZE = 4

# Eigenvalues this close to the closed domain count as inside it
SPECTRUM_TOL = 1e-8

FunctionLike = Union[ScalarRational, MatrixRational]


class SearchConfig(BaseModel):
    """Budget and seed of a K lower-bound search."""

    model_config = ConfigDict(extra="forbid")

    degree: int = Field(default=3, ge=1, description="Powers per pole in the basis")
    s: int = Field(default=1, ge=1, le=MAX_MATRIX_SIZE, description="Coefficient matrix size")
    grid: int = Field(default=1024, ge=4, description="Boundary grid size")
    restarts: int = Field(default=8, ge=1)
    refinement_steps: int = Field(default=2, ge=1, description="Cyclic sweeps per step size")
    seed: int = Field(default=0, ge=0)
    max_workers: Optional[int] = Field(default=None, ge=1)


@dataclass
class SearchResult:
    """Best function found, normalized so that its boundary sup is 1."""

    k_lower_bound: float
    function: MatrixRational
    boundary_sup: float
    traces: List[List[float]] = field(default_factory=list)
    best_restart: int = 0

    @property
    def label(self) -> str:
        return f"K_{self.function.s} lower bound"


def _as_matrix_function(f: FunctionLike) -> MatrixRational:
    if isinstance(f, ScalarRational):
        return MatrixRational.scalar(f)
    if isinstance(f, MatrixRational):
        return f
    raise ValidationError(f"Expected a rational function, got {type(f).__name__}")


def _check_poles_off_closure(F: MatrixRational, domain: Domain) -> None:
    for pole in F.poles:
        if domain.contains(pole):
            raise DomainError(f"Pole {pole} lies in the closed domain")
    if F.has_polynomial_part and domain.contains_infinity():
        raise DomainError("Polynomial part has its pole at infinity, which lies in the closed domain")


def _check_spectrum_in_closure(T: np.ndarray, domain: Domain) -> None:
    outside = [lam for lam in spectrum(T) if not domain.contains(lam, tol=SPECTRUM_TOL)]
    if outside:
        raise DomainError(
            f"{len(outside)} eigenvalue(s) of T lie outside the closed domain, "
            f"e.g. {encode_complex(outside[0])}"
        )


def _pointwise_norms(values: np.ndarray) -> np.ndarray:
    """Spectral norms of a stack of s x s matrices."""
    if values.shape[-1] == 1:
        return np.abs(values[..., 0, 0])
    return np.linalg.norm(values, 2, axis=(-2, -1))


def _parametrization(domain: Domain) -> Optional[PiecewiseCircularDomain]:
    if isinstance(domain, PiecewiseCircularDomain):
        return domain
    if isinstance(domain, DiskIntersection):
        return domain.piecewise
    return None


def _local_peaks(values: np.ndarray) -> np.ndarray:
    """Indices of the cyclic local maxima of ``values``, largest first."""
    peaks = np.flatnonzero((values >= np.roll(values, 1)) & (values >= np.roll(values, -1)))
    order = np.argsort(-values[peaks], kind="stable")
    return peaks[order][:MAX_REFINED_PEAKS]


def _refined_sup(
    norm_at: Any, boundary: PiecewiseCircularDomain, values: np.ndarray
) -> float:
    length = boundary.total_length
    h = length / values.size
    best = float(np.max(values))
    for idx in _local_peaks(values):
        center = length * idx / values.size
        result = minimize_scalar(
            lambda s: -norm_at(boundary.boundary_points_at(np.array([s]))),
            bounds=(center - h, center + h),
            method="bounded",
            options={"xatol": 1e-10 * (1.0 + length)},
        )
        best = max(best, -float(result.fun))
    return best


def sup_boundary(f: FunctionLike, domain: DomainLike, grid: int, refine: bool = True) -> float:
    """max over the boundary of ||F(z)||, sampled then refined near grid peaks.

    Args:
        f: Scalar or matrix rational function
        domain: Domain whose closure avoids the poles of ``f``
        grid: Number of boundary samples
        refine: Whether to polish each grid peak by bounded scalar search

    Returns:
        The boundary supremum (never below the grid maximum)

    Raises:
        DomainError: If a pole of ``f`` lies in the closed domain
        UnboundedBoundaryError: If the boundary reaches infinity
    """
    F = _as_matrix_function(f)
    d = as_domain(domain)
    _check_poles_off_closure(F, d)

    values = _pointwise_norms(F(d.boundary_grid(grid)))
    boundary = _parametrization(d) if refine else None
    if boundary is None:
        return float(np.max(values))

    def norm_at(z: np.ndarray) -> float:
        return float(_pointwise_norms(F(z))[0])

    return _refined_sup(norm_at, boundary, values)


def vn_ratio(f: FunctionLike, T: object, domain: DomainLike, grid: int = 1024) -> float:
    """||F(T)|| / sup over the boundary of ||F(z)||.

    Raises:
        NumericalError: If the boundary sup is zero
        DomainError: If a pole of ``f`` lies in the closed domain or an
            eigenvalue of T lies outside it
    """
    F = _as_matrix_function(f)
    T = as_matrix(T)
    d = as_domain(domain)
    _check_spectrum_in_closure(T, d)

    sup = sup_boundary(F, d, grid)
    if sup == 0:
        raise NumericalError("Boundary sup is zero; the ratio is undefined")
    return opnorm(eval_matrix_rational(F, T)) / sup


def _pole_basis(poles: Sequence[ExtendedComplex], degree: int) -> List[ScalarRational]:
    basis = [ScalarRational(1.0)]
    for pole in poles:
        for j in range(1, degree + 1):
            basis.append(ScalarRational.pole_power(pole, j))
    return basis


class _Objective:
    """Grid von Neumann ratio of sum_b kron(C_b, f_b) over coefficient stacks C."""

    def __init__(
        self, T: np.ndarray, domain: Domain, basis: List[ScalarRational], cfg: SearchConfig
    ) -> None:
        self.basis = basis
        self.s = cfg.s
        self.domain = domain
        self.grid = cfg.grid
        self.on_matrix = np.stack([eval_on_matrix(f, T) for f in basis])
        points = domain.boundary_grid(cfg.grid)
        self.on_boundary = np.stack([np.broadcast_to(f(points), points.shape) for f in basis])

    @property
    def size(self) -> int:
        return len(self.basis) * self.s * self.s

    def coefficients(self, x: np.ndarray) -> np.ndarray:
        return x.reshape(len(self.basis), self.s, self.s)

    def operator(self, x: np.ndarray) -> np.ndarray:
        C = self.coefficients(x)
        return sum(np.kron(C[b], self.on_matrix[b]) for b in range(len(self.basis)))

    def __call__(self, x: np.ndarray) -> float:
        C = self.coefficients(x)
        values = np.einsum("bij,bn->nij", C, self.on_boundary)
        sup = float(np.max(_pointwise_norms(values)))
        if sup == 0:
            return 0.0
        return opnorm(self.operator(x)) / sup

    def function(self, x: np.ndarray) -> MatrixRational:
        C = self.coefficients(x)
        entries = [
            [
                sum(
                    (f * complex(C[b, i, j]) for b, f in enumerate(self.basis)),
                    ScalarRational(),
                )
                for j in range(self.s)
            ]
            for i in range(self.s)
        ]
        return MatrixRational(entries)

    def refined_ratio(self, x: np.ndarray) -> Tuple[float, float]:
        """(ratio, sup) with the boundary sup refined off the grid."""
        sup = sup_boundary(self.function(x), self.domain, self.grid)
        if sup == 0:
            return 0.0, 0.0
        return opnorm(self.operator(x)) / sup, sup


@dataclass
class _RestartOutcome:
    start: np.ndarray
    best: np.ndarray
    trace: List[float]


def _coordinate_search(objective: _Objective, x0: np.ndarray, sweeps: int) -> _RestartOutcome:
    """Cyclic line search on real and imaginary parts with a halving step."""
    x = x0.copy()
    best = objective(x)
    trace = [best]
    for step in STEP_SCHEDULE:
        delta = step * max(float(np.max(np.abs(x))), 1e-300)
        for _ in range(sweeps):
            improved = False
            for k in range(x.size):
                for direction in (1.0, -1.0, 1j, -1j):
                    trial = x.copy()
                    trial[k] += delta * direction
                    value = objective(trial)
                    if value > best:
                        x, best, improved = trial, value, True
            if not improved:
                break
        trace.append(best)
    return _RestartOutcome(start=x0, best=x, trace=trace)


def _warm_start(objective: _Objective) -> np.ndarray:
    """Best single basis element, times the identity when s > 1."""
    nb, s = len(objective.basis), objective.s
    best_x, best_value = None, -1.0
    for b in range(nb):
        C = np.zeros((nb, s, s), dtype=complex)
        C[b] = np.eye(s)
        value = objective(C.ravel())
        if value > best_value:
            best_x, best_value = C.ravel(), value
    if best_x is None:
        raise NumericalError("Objective is not finite on any basis function")
    return best_x


def _random_start(objective: _Objective, rng: np.random.Generator) -> np.ndarray:
    shape = (objective.size,)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def k_lower_bound(
    T: object, domain: DomainLike, poles: Sequence[ExtendedComplex], cfg: Optional[SearchConfig] = None
) -> SearchResult:
    """Search for F maximizing the von Neumann ratio in the pole basis.

    Restart 0 starts from the best single basis function; the others start
    from complex Gaussian coefficients drawn from generators spawned from
    ``cfg.seed``. Each restart keeps the better of its start and end points
    under the refined boundary sup, and the best restart wins (ties go to the
    lowest index).

    Args:
        T: Square matrix with spectrum in the closed domain
        domain: Closed domain
        poles: Pole set meeting every complementary component
        cfg: Search budget

    Returns:
        SearchResult with the normalized maximizing function

    Raises:
        DomainError: If the pole set is not valid for the domain or the
            spectrum leaves the closed domain
    """
    cfg = cfg or SearchConfig()
    T = as_matrix(T)
    d = as_domain(domain)
    if not pole_set_valid(poles, d):
        raise DomainError(
            f"Pole set {[encode_complex(p) for p in poles]} must avoid the closed domain "
            f"and meet each of its {d.component_count} complementary component(s)"
        )
    _check_spectrum_in_closure(T, d)

    basis = _pole_basis(poles, cfg.degree)
    objective = _Objective(T, d, basis, cfg)
    logger.info(
        f"K search: n={T.shape[0]}, s={cfg.s}, basis size {len(basis)}, "
        f"{cfg.restarts} restart(s), seed {cfg.seed}"
    )

    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    starts = [_warm_start(objective)] + [
        _random_start(objective, np.random.default_rng(child)) for child in children[1:]
    ]

    with ThreadPoolExecutor(max_workers=cfg.max_workers) as executor:
        outcomes = list(
            executor.map(
                lambda x0: _coordinate_search(objective, x0, cfg.refinement_steps), starts
            )
        )

    best_index, best_x, best_ratio, best_sup = 0, outcomes[0].best, -1.0, 0.0
    for index, outcome in enumerate(outcomes):
        for x in (outcome.best, outcome.start):
            ratio, sup = objective.refined_ratio(x)
            logger.debug(f"Restart {index}: refined ratio {ratio:.12g}")
            if ratio > best_ratio:
                best_index, best_x, best_ratio, best_sup = index, x, ratio, sup

    if best_sup == 0:
        raise NumericalError("Every candidate vanishes on the boundary")

    function = objective.function(best_x / best_sup)
    boundary_sup = sup_boundary(function, d, cfg.grid)
    k = opnorm(eval_matrix_rational(function, T)) / boundary_sup
    logger.info(f"K_{cfg.s} lower bound {k:.12g} from restart {best_index}")
    return SearchResult(
        k_lower_bound=k,
        function=function,
        boundary_sup=boundary_sup,
        traces=[o.trace for o in outcomes],
        best_restart=best_index,
    )


def split_by_poles(
    f: ScalarRational, domain1: DomainLike, domain2: DomainLike
) -> Tuple[ScalarRational, ScalarRational]:
    """Route each pole's partial-fraction terms to a domain whose closure excludes it.

    Poles excluded by both closures go to the first function, as does the
    constant term.

    Raises:
        DomainError: If a pole lies in both closures
    """
    d1, d2 = as_domain(domain1), as_domain(domain2)
    first: List[complex] = []
    second: List[complex] = []
    for pole in f.poles:
        if not d1.contains(pole, tol=BOUNDARY_TOL):
            first.append(pole)
        elif not d2.contains(pole, tol=BOUNDARY_TOL):
            second.append(pole)
        else:
            raise DomainError(f"Pole {pole} lies in both closed domains")

    if f.has_polynomial_part:
        infinity = complex(float("inf"), 0.0)
        if not d1.contains_infinity():
            first.append(infinity)
        elif not d2.contains_infinity():
            second.append(infinity)
        else:
            raise DomainError("Polynomial part needs a domain whose closure excludes infinity")

    f1 = f.restrict(first, keep_constant=True)
    f2 = f.restrict(second, keep_constant=False)
    logger.debug(f"Split {f!r} into {f1!r} + {f2!r}")
    return f1, f2


def verify_split_calculus(
    f: ScalarRational, T: object, domain1: DomainLike, domain2: DomainLike
) -> float:
    """||f(T) - f1(T) - f2(T)|| for the split of ``f``."""
    T = as_matrix(T)
    f1, f2 = split_by_poles(f, domain1, domain2)
    return opnorm(eval_on_matrix(f, T) - eval_on_matrix(f1, T) - eval_on_matrix(f2, T))


def shrink_operator(T: object, a: complex, epsilon: float) -> np.ndarray:
    """(1 - epsilon)(T - aI) + aI, the star-shaped shrinking towards ``a``.

    Raises:
        ValidationError: If epsilon is outside [0, 1)
    """
    if not 0.0 <= epsilon < 1.0:
        raise ValidationError(f"Shrinking parameter must lie in [0, 1), got {epsilon}")
    T = as_matrix(T)
    a = complex(a)
    if is_infinity(a):
        raise ValidationError("Shrinking center must be finite")
    identity = np.eye(T.shape[0], dtype=complex)
    return (1.0 - epsilon) * (T - a * identity) + a * identity


def result_summary(result: SearchResult) -> Dict[str, Any]:
    """JSON-ready fields of a search result, without the function itself."""
    return {
        "K_lower": result.k_lower_bound,
        "label": result.label,
        "boundary_sup": result.boundary_sup,
        "best_restart": result.best_restart,
        "traces": result.traces,
    }
