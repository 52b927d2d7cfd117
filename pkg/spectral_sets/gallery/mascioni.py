"""Nilpotent pair whose square Blaschke image vanishes while its norm grows."""

from typing import List

import numpy as np

from spectral_sets.blaschke import BlaschkeProduct, blaschke_on_matrix
from spectral_sets.exceptions import ValidationError
from spectral_sets.gallery.base import ClaimOutcome, GalleryItem
from spectral_sets.geometry import ClosedDisk
from spectral_sets.ksearch import SearchConfig, k_lower_bound, vn_ratio
from spectral_sets.matcalc import INFINITY, ScalarRational, opnorm


class MascioniPair(GalleryItem):
    """T_n = [[0, n], [0, 0]] with phi(z) = z^2.

    phi(T_n) = 0 is a contraction for every n, yet ||T_n|| = n, so the closed
    unit disk can be K-spectral for T_n only when K >= n.
    """

    name = "mascioni"
    claim = "||phi(T_n)|| = 0 and the von Neumann ratio of z equals n, so K >= n"

    def __init__(self, n: float, search: bool = True, seed: int = 0) -> None:
        if not n > 0:
            raise ValidationError(f"Parameter n must be positive, got {n}")
        super().__init__(n=float(n), search=search, seed=seed)
        self.n = float(n)
        self.search = search
        self.seed = seed

    @property
    def operator(self) -> np.ndarray:
        return np.array([[0.0, self.n], [0.0, 0.0]], dtype=complex)

    @property
    def blaschke(self) -> BlaschkeProduct:
        return BlaschkeProduct(power=2)

    @property
    def functions(self) -> List[ScalarRational]:
        return [ScalarRational.monomial(2), ScalarRational.monomial(1)]

    def check(self) -> List[ClaimOutcome]:
        T = self.operator
        disk = ClosedDisk(0j, 1.0)
        outcomes = [
            ClaimOutcome.at_most("||phi(T_n)|| = 0", opnorm(blaschke_on_matrix(self.blaschke, T)), 1e-12),
            ClaimOutcome.at_most("||T_n|| = n", abs(opnorm(T) - self.n), 1e-12 * (1.0 + self.n)),
            ClaimOutcome.at_most(
                "vn_ratio(z, T_n, unit disk) = n",
                abs(vn_ratio(ScalarRational.monomial(1), T, disk) - self.n),
                1e-9 * (1.0 + self.n),
            ),
        ]
        if self.search:
            result = k_lower_bound(T, disk, [INFINITY], SearchConfig(degree=3, seed=self.seed))
            outcomes.append(
                ClaimOutcome.at_least(
                    "K lower bound >= n", result.k_lower_bound, self.n - 1e-6,
                    best_restart=result.best_restart,
                )
            )
        return outcomes


def mascioni_pair(n: float, search: bool = True, seed: int = 0) -> MascioniPair:
    """Build the nilpotent pair for parameter n > 0.

    Raises:
        ValidationError: If n is not positive
    """
    return MascioniPair(n, search=search, seed=seed)
