"""Seeded end-to-end properties spanning several modules."""

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from tests.helpers import random_contraction, random_matrix, random_zeros

from spectral_sets.blaschke import BlaschkeProduct, similarity_transform
from spectral_sets.classify import RhoGrid, is_good_disk, is_rho_contraction_poisson
from spectral_sets.geometry import ClosedDisk, MobiusMap, mobius_image
from spectral_sets.ksearch import SearchConfig, k_lower_bound
from spectral_sets.matcalc import (
    INFINITY,
    Contour,
    ScalarRational,
    eval_on_matrix,
    eval_on_matrix_cauchy,
    opnorm,
    spectrum,
)

CASES = 20
CALCULUS_CASES = 100
MOBIUS_CASES = 200
MONOTONE_CASES = 200
SIMILARITY_CASES = 100


def random_function(rng: np.random.Generator) -> ScalarRational:
    """Random rational function with poles on |z| = 1.5..2.5 and a linear part."""
    poles = (1.5 + rng.uniform(0.0, 1.0, 2)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 2))
    coeffs = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return ScalarRational(
        coeffs[0],
        {(poles[0], 1): coeffs[1], (poles[1], 2): coeffs[2], (INFINITY, 1): coeffs[3]},
    )


def multiset_distance(a: np.ndarray, b: np.ndarray) -> float:
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


class TestIntegration:
    """Properties checked on seeded random cases."""

    def test_calculus_agrees_with_quadrature(self, rng):
        contour = Contour.circle(0j, 1.0, 1024)
        for _ in range(CALCULUS_CASES):
            f = random_function(rng)
            T = random_contraction(rng, 3, 0.5)
            exact = eval_on_matrix(f, T)
            quadrature = eval_on_matrix_cauchy(f, T, contour)
            assert opnorm(exact - quadrature) <= 1e-7

    def test_calculus_is_multiplicative(self, rng):
        for _ in range(CASES):
            f, g = random_function(rng), random_function(rng)
            T = random_contraction(rng, 3, 0.8)
            fT, gT = eval_on_matrix(f, T), eval_on_matrix(g, T)
            residual = opnorm(eval_on_matrix(f * g, T) - fT @ gT)
            assert residual <= 1e-9 * (1.0 + opnorm(fT) * opnorm(gT))

    def test_spectral_mapping(self, rng):
        for _ in range(CASES):
            f = random_function(rng)
            eigenvalues = 0.9 * rng.uniform(0.0, 1.0, 3) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 3))
            V = np.eye(3) + 0.3 * random_matrix(rng, 3) / 3.0
            T = V @ np.diag(eigenvalues) @ np.linalg.inv(V)
            fT = eval_on_matrix(f, T)
            scale = 1.0 + opnorm(fT)
            assert multiset_distance(spectrum(fT), f(eigenvalues)) <= 1e-7 * scale

    def test_goodness_is_mobius_invariant(self, rng):
        checked = 0
        for _ in range(2 * MOBIUS_CASES):
            T = random_contraction(rng, 3, rng.uniform(0.3, 1.0))
            D = ClosedDisk(0.5 * rng.uniform(-1.0, 1.0) + 0.5j * rng.uniform(-1.0, 1.0), rng.uniform(0.3, 1.5))
            pole = 3.5 * np.exp(2j * np.pi * rng.uniform(0.0, 1.0))
            psi = MobiusMap(0.0, 1.0, 1.0, -pole)
            before = is_good_disk(T, D)
            if abs(before.margin) < 1e-3:
                continue
            after = is_good_disk(psi.on_matrix(T), mobius_image(psi, D))
            assert after.margin * before.margin > 0
            checked += 1
            if checked == MOBIUS_CASES:
                break
        assert checked == MOBIUS_CASES

    def test_goodness_is_monotone(self, rng):
        checked = 0
        for _ in range(MONOTONE_CASES):
            T = random_contraction(rng, 3, rng.uniform(0.3, 1.2))
            small = ClosedDisk(0.2 * (rng.standard_normal() + 1j * rng.standard_normal()), rng.uniform(0.5, 1.5))
            shift = 0.3 * (rng.standard_normal() + 1j * rng.standard_normal())
            large = ClosedDisk(small.center + shift, small.radius + abs(shift) + rng.uniform(0.0, 0.5))
            if is_good_disk(T, small).margin >= 1e-6:
                assert is_good_disk(T, large).passed
                checked += 1
        assert checked > 0

    def test_rho_classes_are_nested(self, rng):
        grid = RhoGrid.default(radii=16, angles=32)
        for _ in range(CASES // 2):
            T = random_contraction(rng, 2, rng.uniform(0.8, 1.6))
            T = T / max(1.0, 1.05 * float(np.max(np.abs(np.linalg.eigvals(T)))))
            for rho1, rho2 in [(1.5, 2.0), (2.0, 3.0)]:
                if is_rho_contraction_poisson(T, rho1, grid).margin >= 1e-6:
                    assert is_rho_contraction_poisson(T, rho2, grid).passed

    def test_similarity_to_contraction(self, rng):
        for _ in range(SIMILARITY_CASES):
            zeros = np.array(random_zeros(rng, 3, radius=0.7))
            V = np.eye(3) + 0.3 * random_matrix(rng, 3) / 3.0
            T = V @ np.diag(zeros) @ np.linalg.inv(V)
            result = similarity_transform(BlaschkeProduct(zeros=tuple(zeros)), T)
            assert result.contraction_norm <= 1.0 + 1e-8

            S, S_inv = result.S, np.linalg.inv(result.S)
            assert multiset_distance(spectrum(S @ T @ S_inv), zeros) <= 1e-8 * result.condition_number

            M = S @ S
            for _ in range(5):
                h = rng.standard_normal(3) + 1j * rng.standard_normal(3)
                Th = T @ h
                gap = np.vdot(h, M @ h).real - np.vdot(Th, M @ Th).real
                assert gap >= -1e-10 * (1.0 + opnorm(M)) * np.vdot(h, h).real


@pytest.mark.parametrize("seed", [0, 1])
def test_search_reproducible_across_worker_counts(seed, unit_disk):
    T = np.array([[0.2, 1.5], [0.0, -0.3]], dtype=complex)
    serial = k_lower_bound(T, unit_disk, [INFINITY], SearchConfig(degree=2, grid=128, restarts=3, seed=seed, max_workers=1))
    parallel = k_lower_bound(T, unit_disk, [INFINITY], SearchConfig(degree=2, grid=128, restarts=3, seed=seed, max_workers=3))
    assert serial.k_lower_bound == parallel.k_lower_bound
    assert serial.best_restart == parallel.best_restart
