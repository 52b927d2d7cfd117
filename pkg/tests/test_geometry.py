"""Tests for generalized disks, domains and geometric predicates."""

import math

import numpy as np
import pytest

from spectral_sets.exceptions import (
    DegenerateMapError,
    DomainError,
    UnboundedBoundaryError,
    ValidationError,
)
from spectral_sets.geometry import (
    CircularArc,
    ClosedDisk,
    DiskIntersection,
    ExteriorData,
    ExteriorDisk,
    HalfPlane,
    MobiusMap,
    PiecewiseCircularDomain,
    as_domain,
    boundary_grid,
    canonical_map_to_unit_disk,
    condition_A_check,
    disk_contains,
    disk_from_hermitian,
    exterior_disk_condition,
    minimal_enclosing_circle,
    mobius_image,
    pole_set_valid,
    transversal_at,
)
from spectral_sets.matcalc import INFINITY

FULL_TURN = 2.0 * math.pi


@pytest.fixture
def unit_circle_domain() -> PiecewiseCircularDomain:
    return PiecewiseCircularDomain([[CircularArc(0j, 1.0, 0.0, FULL_TURN)]])


@pytest.fixture
def arc_annulus() -> PiecewiseCircularDomain:
    return PiecewiseCircularDomain(
        [
            [CircularArc(0j, 1.0, 0.0, FULL_TURN)],
            [CircularArc(0j, 0.5, FULL_TURN, 0.0)],
        ]
    )


class TestGeneralizedDisks:
    """Disk kinds, Hermitian forms and Mobius images."""

    def test_closed_disk_membership(self):
        D = ClosedDisk(1.0, 2.0)
        assert D.contains(2.5)
        assert not D.contains(3.5)
        assert not D.contains(INFINITY)

    def test_exterior_disk_membership(self):
        D = ExteriorDisk(0j, 1.0)
        assert D.contains(2.0)
        assert D.contains(1.0)
        assert not D.contains(0.5)
        assert D.contains(INFINITY)

    def test_halfplane_membership(self):
        D = HalfPlane(0j, 1.0)
        assert D.contains(1.0)
        assert not D.contains(-1.0)
        assert D.contains(INFINITY)

    def test_disk_contains(self):
        assert disk_contains(ClosedDisk(0j, 1.0), 0.6 + 0.7j)
        assert disk_contains(ExteriorDisk(0j, 1.0), INFINITY)
        assert not disk_contains(HalfPlane(0j, -1.0), 1.0)

    def test_invalid_disks(self):
        with pytest.raises(ValidationError):
            ClosedDisk(0j, 0.0)
        with pytest.raises(ValidationError):
            ExteriorDisk(0j, -1.0)
        with pytest.raises(ValidationError, match="modulus 1"):
            HalfPlane(0j, 2.0)

    @pytest.mark.parametrize(
        "disk",
        [ClosedDisk(1 + 1j, 2.0), ExteriorDisk(-0.5j, 0.25), HalfPlane(1.0, 1j)],
    )
    def test_hermitian_form_recovers_disk(self, disk):
        recovered = disk_from_hermitian(disk.hermitian_form())
        assert type(recovered) is type(disk)
        for z in disk.boundary_sample(8):
            assert recovered.boundary_residual(z) < 1e-12

    def test_degenerate_form(self):
        with pytest.raises(DegenerateMapError):
            disk_from_hermitian(np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_inversion_of_disk_avoiding_origin(self):
        image = mobius_image(MobiusMap(0.0, 1.0, 1.0, 0.0), ClosedDisk(2.0, 1.0))
        assert isinstance(image, ClosedDisk)
        assert image.center == pytest.approx(2.0 / 3.0)
        assert image.radius == pytest.approx(1.0 / 3.0)

    def test_inversion_of_unit_disk(self):
        image = mobius_image(MobiusMap(0.0, 1.0, 1.0, 0.0), ClosedDisk(0j, 1.0))
        assert isinstance(image, ExteriorDisk)
        assert image.center == pytest.approx(0.0)
        assert image.radius == pytest.approx(1.0)

    def test_affine_image(self):
        image = mobius_image(MobiusMap(2.0, 1.0, 0.0, 1.0), ClosedDisk(0j, 1.0))
        assert isinstance(image, ClosedDisk)
        assert image.center == pytest.approx(1.0)
        assert image.radius == pytest.approx(2.0)

    @pytest.mark.parametrize(
        "disk, inside",
        [
            (ClosedDisk(1j, 2.0), 1j + 1.5),
            (ExteriorDisk(1.0, 0.5), 3.0 + 2.0j),
            (HalfPlane(1.0, 1j), 1.0 - 0.5j),
        ],
    )
    def test_canonical_map(self, disk, inside):
        phi = canonical_map_to_unit_disk(disk)
        boundary = disk.boundary_sample(16)
        np.testing.assert_allclose(np.abs(phi.on_array(boundary)), 1.0, atol=1e-10)
        assert abs(phi(inside)) < 1.0


class TestMobiusMap:
    """Mobius maps as functions and at matrices."""

    def test_degenerate(self):
        with pytest.raises(DegenerateMapError):
            MobiusMap(1.0, 2.0, 2.0, 4.0)

    def test_pole_and_infinity(self):
        psi = MobiusMap(1.0, 0.0, 1.0, -2.0)
        assert psi.pole == 2.0
        assert psi(2.0) == INFINITY
        assert psi(INFINITY) == 1.0

    def test_inverse_compose(self):
        psi = MobiusMap(1.0, 2j, 0.5, 3.0)
        identity = psi.compose(psi.inverse())
        assert identity(0.3 + 0.2j) == pytest.approx(0.3 + 0.2j)

    def test_to_rational_matches(self):
        psi = MobiusMap(1.0, 2j, 0.5, 3.0)
        z = np.array([0.1, 1.0 + 1.0j, -2.0])
        np.testing.assert_allclose(psi.to_rational()(z), psi.on_array(z))

    def test_on_matrix(self, rng):
        T = 0.5 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        psi = MobiusMap(1.0, 2j, 0.5, 10.0)
        expected = (T + 2j * np.eye(3)) @ np.linalg.inv(0.5 * T + 10.0 * np.eye(3))
        np.testing.assert_allclose(psi.on_matrix(T), expected, atol=1e-12)


class TestCircularArc:
    """Arc parametrization."""

    def test_length_and_endpoints(self):
        arc = CircularArc(1.0, 2.0, 0.0, math.pi / 2)
        assert arc.length == pytest.approx(math.pi)
        assert arc.start_point == pytest.approx(3.0)
        assert arc.end_point == pytest.approx(1.0 + 2.0j)
        assert arc.orientation == 1

    def test_clockwise(self):
        arc = CircularArc(0j, 1.0, math.pi, 0.0)
        assert arc.orientation == -1
        assert arc.reversed().orientation == 1

    def test_invalid(self):
        with pytest.raises(ValidationError):
            CircularArc(0j, 1.0, 0.0, 0.0)
        with pytest.raises(ValidationError):
            CircularArc(0j, 1.0, 0.0, 7.0)

    def test_distance(self):
        arc = CircularArc(0j, 1.0, 0.0, math.pi / 2)
        assert float(arc.distance(np.asarray(2.0))) == pytest.approx(1.0)
        # Nearest point is the endpoint 1
        assert float(arc.distance(np.asarray(1.0 - 1.0j))) == pytest.approx(1.0)


class TestPiecewiseCircularDomain:
    """Arc-bounded domains."""

    def test_unit_disk(self, unit_circle_domain):
        d = unit_circle_domain
        assert d.contains(0.0)
        assert d.contains(1.0)
        assert not d.contains(2.0)
        assert not d.contains_infinity()
        assert d.component_count == 1
        assert d.complement_points == [INFINITY]
        assert d.total_length == pytest.approx(FULL_TURN)

    def test_boundary_grid_of_four(self, unit_circle_domain):
        grid = boundary_grid(unit_circle_domain, 4)
        np.testing.assert_allclose(grid, [1.0, 1j, -1.0, -1j], atol=1e-12)

    def test_boundary_grid_too_small(self, unit_circle_domain):
        with pytest.raises(ValidationError):
            unit_circle_domain.boundary_grid(3)

    def test_unclosed_curve(self):
        with pytest.raises(ValidationError, match="gap"):
            PiecewiseCircularDomain([[CircularArc(0j, 1.0, 0.0, math.pi)]])

    def test_annulus(self, arc_annulus):
        assert arc_annulus.contains(0.75)
        assert not arc_annulus.contains(0.25)
        assert arc_annulus.component_count == 2
        assert arc_annulus.orientations == [1, -1]
        assert arc_annulus.component_index(INFINITY) == 0
        assert arc_annulus.component_index(0.25j) == 1
        assert arc_annulus.component_index(0.75) is None
        hole = arc_annulus.complement_points[1]
        assert abs(hole) < 0.5

    def test_two_outer_curves_rejected(self):
        with pytest.raises(ValidationError, match="connected"):
            PiecewiseCircularDomain(
                [
                    [CircularArc(0j, 1.0, 0.0, FULL_TURN)],
                    [CircularArc(5.0, 1.0, 0.0, FULL_TURN)],
                ]
            )

    def test_inconsistent_exterior_data(self):
        arc = CircularArc(0j, 1.0, 0.0, FULL_TURN)
        with pytest.raises(ValidationError, match="expected R"):
            PiecewiseCircularDomain([[arc]], {0: ExteriorData(1.0, [(1.0, 3.0)])})

    def test_pole_set_valid(self, arc_annulus):
        assert pole_set_valid([INFINITY, 0.0], arc_annulus)
        assert not pole_set_valid([INFINITY], arc_annulus)
        assert not pole_set_valid([INFINITY, 0.0, 0.75], arc_annulus)


class TestDiskIntersection:
    """Intersections of generalized disks."""

    def test_annulus_components(self, annulus):
        assert annulus.component_count == 2
        assert annulus.complement_points == [INFINITY, 0j]
        assert annulus.component_index(0.1) == 1
        assert annulus.component_index(INFINITY) == 0
        assert pole_set_valid([0.0, INFINITY], annulus)

    def test_lens(self, lens):
        assert lens.component_count == 1
        assert lens.contains(0.0)
        assert not lens.contains(1.2)
        assert lens.piecewise.total_length == pytest.approx(4.0 * math.pi / 3.0)

    def test_lens_boundary_points(self, lens):
        grid = lens.boundary_grid(64)
        assert np.max(lens.distance_to_boundary(grid)) < 1e-12

    def test_halfplane_has_unbounded_boundary(self):
        d = DiskIntersection([HalfPlane(0j, 1.0), ClosedDisk(0j, 1.0)])
        assert d.contains(0.5)
        assert not d.contains(-0.5)
        with pytest.raises(UnboundedBoundaryError):
            d.to_piecewise()

    def test_empty(self):
        with pytest.raises(ValidationError):
            DiskIntersection([])

    def test_as_domain(self, unit_disk):
        d = as_domain(unit_disk)
        assert isinstance(d, DiskIntersection)
        assert as_domain(d) is d


class TestTransversality:
    """The sector test at boundary points."""

    def test_crossing_disks(self):
        report = transversal_at(
            ClosedDisk(-0.5, 1.0), ClosedDisk(0.5, 1.0), complex(0.0, math.sqrt(3.0) / 2.0)
        )
        assert report.transversal
        assert set(report.sectors) == {"S0", "S1_left", "S1_right", "S2_left", "S2_right"}

    def test_internally_tangent_disks(self):
        report = transversal_at(ClosedDisk(0j, 1.0), ClosedDisk(0.5, 0.5), 1.0)
        assert not report.transversal

    def test_externally_tangent_disks(self):
        report = transversal_at(ClosedDisk(0j, 1.0), ClosedDisk(2.0, 1.0), 1.0)
        assert not report.transversal
        assert "accumulate" in report.note

    def test_point_off_boundary(self):
        with pytest.raises(DomainError):
            transversal_at(ClosedDisk(0j, 1.0), ClosedDisk(0.5, 1.0), 0.0)


class TestDomainConditions:
    """Exterior disk condition and the arc-collection condition."""

    def test_exterior_disk_condition_on_unit_disk(self, unit_disk):
        report = exterior_disk_condition(as_domain(unit_disk).piecewise, 1.0)
        assert report.passed
        assert not report.failures

    def test_exterior_disk_condition_fails_in_small_hole(self, annulus):
        report = exterior_disk_condition(annulus.piecewise, 1.0)
        assert not report.passed
        assert all(abs(complex(*f)) == pytest.approx(0.5) for f in report.failures)

    def test_exterior_radius_must_be_positive(self, unit_disk):
        with pytest.raises(ValidationError):
            exterior_disk_condition(as_domain(unit_disk).piecewise, 0.0)

    def test_condition_on_generated_exterior_data(self, unit_disk):
        report = condition_A_check(as_domain(unit_disk).piecewise)
        assert report.passed
        assert set(report.clauses) == {
            "touch",
            "common_intersection",
            "transversal_endpoints",
            "ahlfors_regular",
        }

    def test_condition_without_exterior_data(self, unit_circle_domain):
        report = condition_A_check(unit_circle_domain)
        assert not report.passed
        assert report.clauses["touch"].failures == ["arc 0: no exterior data"]

    def test_minimal_enclosing_circle(self):
        center, radius = minimal_enclosing_circle([1.0, -1.0, 1j, 0.2])
        assert center == pytest.approx(0.0, abs=1e-12)
        assert radius == pytest.approx(1.0)
