"""Tests for file loaders, anchored validation errors and writers."""

import numpy as np
import pytest

from spectral_sets.blaschke import BlaschkeProduct
from spectral_sets.exceptions import ValidationError
from spectral_sets.formats import (
    DomainSchema,
    domain_from_schema,
    format_path,
    load_blaschke,
    load_disk,
    load_domain,
    load_matrix,
    load_rational,
    load_search_config,
    locate,
    parse_complex,
    parse_poles,
    points_csv,
    rational_to_dict,
    write_points_csv,
)
from spectral_sets.geometry import (
    ClosedDisk,
    DiskIntersection,
    ExteriorDisk,
    HalfPlane,
    PiecewiseCircularDomain,
)
from spectral_sets.matcalc import INFINITY, MatrixRational, ScalarRational, is_infinity

NILPOTENT = {"dim": 2, "entries": [[[0, 0], [4, 0]], [[0, 0], [0, 0]]]}


class TestMatrixFiles:
    def test_load(self, write_json):
        T = load_matrix(write_json("m.json", NILPOTENT))
        np.testing.assert_array_equal(T, [[0, 4], [0, 0]])
        assert T.dtype == complex

    def test_dim_mismatch(self, write_json):
        path = write_json("m.json", {**NILPOTENT, "dim": 3})
        with pytest.raises(ValidationError, match="dim is 3"):
            load_matrix(path)

    def test_not_finite_entry_is_anchored(self, write_json):
        data = {"dim": 2, "entries": [[[0, 0], [1, 0]], [[float("nan"), 0], [0, 0]]]}
        path = write_json("m.json", data)
        with pytest.raises(ValidationError) as exc_info:
            load_matrix(path)
        assert exc_info.value.message == f"{path}:3: entries[1][0]: entries entry [1][0] is not finite"

    def test_bad_complex_literal(self, write_json):
        path = write_json("m.json", {"entries": [[[0, 0], "x"], [[0, 0], [0, 0]]]})
        with pytest.raises(ValidationError, match=r"entries\[0\]\[1\]"):
            load_matrix(path)

    def test_not_square(self, write_json):
        path = write_json("m.json", {"entries": [[[0, 0], [1, 0]]]})
        with pytest.raises(ValidationError, match="square"):
            load_matrix(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "dim": 2,\n  "entries": [\n', encoding="utf-8")
        with pytest.raises(ValidationError, match="malformed JSON"):
            load_matrix(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot read file"):
            load_matrix(tmp_path / "absent.json")

    def test_unknown_field(self, write_json):
        path = write_json("m.json", {**NILPOTENT, "rows": 2})
        with pytest.raises(ValidationError) as exc_info:
            load_matrix(path)
        assert exc_info.value.exit_code == 2
        assert "rows" in exc_info.value.message


class TestRationalFiles:
    def test_scalar(self, write_json):
        path = write_json(
            "f.json",
            {"constant": [1, 0], "terms": [{"pole": [3, 0], "power": 1, "coeff": [2, 0]}]},
        )
        f = load_rational(path)
        assert isinstance(f, ScalarRational)
        assert f(1.0) == pytest.approx(0.0)

    def test_pole_at_infinity(self, write_json):
        path = write_json("f.json", {"terms": [{"pole": "inf", "power": 2}]})
        f = load_rational(path)
        assert f.has_polynomial_part
        assert f(3.0) == pytest.approx(9.0)

    def test_written_form_loads_back(self, write_json):
        f = ScalarRational(0.5j, {(INFINITY, 1): 2.0, (1.5 + 0.5j, 2): -1.0})
        g = load_rational(write_json("f.json", rational_to_dict(f)))
        z = np.array([0.1, -0.4j])
        np.testing.assert_allclose(g(z), f(z))

    def test_matrix_function(self, write_json):
        one = {"constant": [1, 0]}
        zero = {"constant": [0, 0]}
        F = load_rational(write_json("F.json", {"s": 2, "entries": [[one, zero], [zero, one]]}))
        assert isinstance(F, MatrixRational)
        assert F.s == 2

    def test_matrix_function_size_mismatch(self, write_json):
        path = write_json("F.json", {"s": 3, "entries": [[{"constant": [1, 0]}]]})
        with pytest.raises(ValidationError, match="s is 3"):
            load_rational(path)


class TestDomainFiles:
    def test_disks(self, write_json):
        path = write_json(
            "annulus.json",
            {
                "disks": [
                    {"kind": "closed", "center": [0, 0], "radius": 1},
                    {"kind": "exterior", "center": [0, 0], "radius": 0.5},
                ]
            },
        )
        domain = load_domain(path)
        assert isinstance(domain, DiskIntersection)
        assert domain.component_count == 2

    def test_curves(self, write_json):
        path = write_json(
            "circle.json",
            {"curves": [{"arcs": [{"center": [0, 0], "radius": 1, "from": 0, "to": 6.283185307179586}]}]},
        )
        domain = load_domain(path)
        assert isinstance(domain, PiecewiseCircularDomain)
        assert domain.total_length == pytest.approx(2.0 * np.pi)

    def test_unclosed_chain(self, write_json):
        path = write_json(
            "open.json",
            {"curves": [{"arcs": [{"center": [0, 0], "radius": 1, "from": 0, "to": 3}]}]},
        )
        with pytest.raises(ValidationError, match="does not close"):
            load_domain(path)

    def test_needs_one_description(self, write_json):
        with pytest.raises(ValidationError, match="exactly one"):
            load_domain(write_json("empty.json", {}))

    def test_unvalidated_schema_without_description(self):
        schema = DomainSchema.model_construct(curves=None, disks=None, exterior=[], complement_points=None)
        with pytest.raises(ValidationError, match="exactly one") as exc_info:
            domain_from_schema(schema)
        assert exc_info.value.errors == ["curves", "disks"]

    def test_disk_kinds(self, write_json):
        assert isinstance(
            load_disk(write_json("d.json", {"kind": "closed", "center": [0, 0], "radius": 1})),
            ClosedDisk,
        )
        assert isinstance(
            load_disk(write_json("e.json", {"kind": "exterior", "center": [1, 0], "radius": 2})),
            ExteriorDisk,
        )
        half = load_disk(write_json("h.json", {"kind": "halfplane", "anchor": [0, 0], "direction": [0, 1]}))
        assert isinstance(half, HalfPlane)
        assert half.direction == 1j

    def test_half_plane_needs_direction(self, write_json):
        with pytest.raises(ValidationError, match="direction"):
            load_disk(write_json("h.json", {"kind": "halfplane", "anchor": [0, 0]}))

    def test_negative_radius(self, write_json):
        path = write_json("d.json", {"kind": "closed", "center": [0, 0], "radius": -1})
        with pytest.raises(ValidationError, match="radius"):
            load_disk(path)


class TestBlaschkeFiles:
    def test_load(self, write_json):
        path = write_json(
            "b.json", {"theta": 0.0, "zeros": [[0.5, 0]], "power": 2, "normalization": "plain"}
        )
        assert load_blaschke(path) == BlaschkeProduct(zeros=(0.5,), power=2)

    def test_zero_on_circle_is_anchored(self, write_json):
        path = write_json("b.json", {"theta": 0.0, "zeros": [[1, 0]]})
        with pytest.raises(ValidationError) as exc_info:
            load_blaschke(path)
        message = exc_info.value.message
        assert message.startswith(f"{path}:3: zeros[0]: ")
        assert "|lambda| < 1" in message


class TestSearchConfigFiles:
    def test_load(self, write_json):
        cfg = load_search_config(write_json("c.json", {"degree": 2, "seed": 5}))
        assert (cfg.degree, cfg.seed, cfg.restarts) == (2, 5, 8)

    def test_unknown_key(self, write_json):
        with pytest.raises(ValidationError, match="budget"):
            load_search_config(write_json("c.json", {"budget": 3}))


class TestParsing:
    def test_format_path(self):
        assert format_path(("curves", 0, "arcs", 2)) == "curves[0].arcs[2]"
        assert format_path(()) == "<root>"

    def test_locate(self):
        text = '{\n  "a": 1,\n  "b": {\n    "c": 2\n  }\n}'
        assert locate(text, "b.c") == 4
        assert locate(text, "missing") == 1

    @pytest.mark.parametrize(
        "text, expected",
        [("1,2", 1 + 2j), ("1-2j", 1 - 2j), ("0.5i", 0.5j), (" 3 ", 3 + 0j)],
    )
    def test_parse_complex(self, text, expected):
        assert parse_complex(text) == expected

    def test_parse_infinity(self):
        assert is_infinity(parse_complex("inf"))

    @pytest.mark.parametrize("text", ["abc", "1,2,3", "1,x"])
    def test_parse_complex_rejects(self, text):
        with pytest.raises(ValidationError):
            parse_complex(text)

    def test_parse_poles(self):
        poles = parse_poles("inf;0.5,0")
        assert is_infinity(poles[0])
        assert poles[1] == 0.5

    def test_empty_pole_list(self):
        with pytest.raises(ValidationError, match="empty"):
            parse_poles(" ; ")


class TestPointClouds:
    def test_csv_text(self):
        assert points_csv(np.array([1 + 2j, 0.25 - 0.5j])) == "re,im\n1.0,2.0\n0.25,-0.5\n"

    def test_write(self, tmp_path):
        path = tmp_path / "points.csv"
        write_points_csv(path, np.array([1j]))
        assert path.read_text(encoding="utf-8") == "re,im\n0.0,1.0\n"
