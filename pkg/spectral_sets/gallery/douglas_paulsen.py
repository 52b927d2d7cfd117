"""Circular domains with holes, covered by one disk per boundary circle."""

import cmath
from typing import List, Optional, Sequence, Tuple

import numpy as np

from spectral_sets.classify import disk_collection_test
from spectral_sets.exceptions import ValidationError
from spectral_sets.gallery.base import ClaimOutcome, GalleryItem
from spectral_sets.geometry import (
    ClosedDisk,
    DiskIntersection,
    ExteriorDisk,
    GeneralizedDisk,
    MobiusMap,
    canonical_map_to_unit_disk,
    pole_set_valid,
)
from spectral_sets.matcalc import INFINITY, ScalarRational, opnorm

INTERIOR_SAMPLES = 400

Hole = Tuple[complex, float]


class DouglasPaulsenDomain(GalleryItem):
    """Omega = {|z| <= r0} minus open holes, written as X_0 n X_1 n ... n X_m.

    X_0 is the outer disk and X_k the exterior of hole k. Each X_k is carried
    onto the closed unit disk by its canonical Mobius map phi_k.
    """

    name = "douglas-paulsen"
    claim = "every phi_k maps Omega into the closed unit disk and each X_k is a good disk for T"

    def __init__(
        self,
        outer_radius: float,
        holes: Sequence[Hole],
        points: Optional[Sequence[complex]] = None,
        seed: int = 0,
    ) -> None:
        if not outer_radius > 0:
            raise ValidationError(f"Outer radius must be positive, got {outer_radius}")
        parsed: List[Hole] = [(complex(c), float(r)) for c, r in holes]
        for k, (c, r) in enumerate(parsed):
            if not r > 0:
                raise ValidationError("Hole radius must be positive", errors=[f"holes[{k}]"])
            if abs(c) + r >= outer_radius:
                raise ValidationError(
                    f"Hole {k} must lie strictly inside the outer circle", errors=[f"holes[{k}]"]
                )
        for i in range(len(parsed)):
            for j in range(i + 1, len(parsed)):
                (ci, ri), (cj, rj) = parsed[i], parsed[j]
                if abs(ci - cj) <= ri + rj:
                    raise ValidationError(
                        f"Holes {i} and {j} overlap (gap {abs(ci - cj) - ri - rj:.3g})",
                        errors=[f"holes[{i}]", f"holes[{j}]"],
                    )
        super().__init__(outer_radius=float(outer_radius), holes=[list(h) for h in parsed], seed=seed)
        self.outer_radius = float(outer_radius)
        self.holes = parsed
        self.seed = seed
        self.domain = DiskIntersection(self.disks)
        self._points = [complex(p) for p in points] if points is not None else None

    @property
    def disks(self) -> List[GeneralizedDisk]:
        """X_0, X_1, ..., X_m."""
        return [ClosedDisk(0j, self.outer_radius)] + [ExteriorDisk(c, r) for c, r in self.holes]

    @property
    def maps(self) -> List[MobiusMap]:
        """phi_0 = z / r0 and phi_k = r_k / (z - c_k)."""
        return [canonical_map_to_unit_disk(D) for D in self.disks]

    @property
    def functions(self) -> List[ScalarRational]:
        return [phi.to_rational() for phi in self.maps]

    @property
    def poles(self) -> List[complex]:
        return [c for c, _ in self.holes] + [INFINITY]

    def sample_interior(self, count: int = INTERIOR_SAMPLES) -> np.ndarray:
        """Seeded uniform samples of the outer disk that fall in Omega."""
        rng = np.random.default_rng(self.seed)
        radius = self.outer_radius * np.sqrt(rng.uniform(0.0, 1.0, count))
        z = radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))
        return z[self.domain.contains_array(z, tol=0.0)]

    @property
    def operator(self) -> np.ndarray:
        """Diagonal operator with eigenvalues in Omega."""
        if self._points is not None:
            points = self._points
        else:
            inner = max((abs(c) + r for c, r in self.holes), default=0.0)
            radius = 0.5 * (inner + self.outer_radius)
            points = [radius * cmath.exp(2j * np.pi * k / 5) for k in range(5)]
        return np.diag(np.array(points, dtype=complex))

    def check(self) -> List[ClaimOutcome]:
        samples = np.concatenate([self.domain.boundary_grid(256), self.sample_interior()])
        T = self.operator
        outcomes = []
        for k, phi in enumerate(self.maps):
            outcomes.append(
                ClaimOutcome.at_most(
                    f"|phi_{k}| <= 1 on Omega",
                    float(np.max(np.abs(phi.on_array(samples)))),
                    1.0 + 1e-12,
                )
            )
            outcomes.append(
                ClaimOutcome.at_most(
                    f"phi_{k}(T) is a contraction", opnorm(phi.on_matrix(T)), 1.0 + 1e-10
                )
            )
        collection = disk_collection_test(T, self.disks)
        outcomes.append(
            ClaimOutcome.holds(
                "every X_k is a good disk for T",
                collection.passed,
                margins=collection.witness["margins"],
            )
        )
        outcomes.append(
            ClaimOutcome.holds(
                "hole centers with infinity form a valid pole set",
                pole_set_valid(self.poles, self.domain),
            )
        )
        return outcomes


def douglas_paulsen_domain(
    outer_radius: float,
    holes: Sequence[Hole],
    points: Optional[Sequence[complex]] = None,
    seed: int = 0,
) -> DouglasPaulsenDomain:
    """Build the holed domain with its canonical maps.

    Raises:
        ValidationError: If a hole leaves the outer disk or two holes overlap
    """
    return DouglasPaulsenDomain(outer_radius, holes, points=points, seed=seed)
