"""Tests for the command-line front end."""

import json

import pytest

from spectral_sets import __version__
from spectral_sets.cli import GRID_RISK, _piecewise, build_parser, run, validate_inputs
from spectral_sets.exceptions import ValidationError
from spectral_sets.gallery import REGISTRY
from spectral_sets.geometry import Domain

UNIT_DISK = {"kind": "closed", "center": [0, 0], "radius": 1}


def nilpotent_file(a: float) -> dict:
    return {"dim": 2, "entries": [[[0, 0], [a, 0]], [[0, 0], [0, 0]]]}


@pytest.fixture
def files(write_json):
    """Common input files."""
    return {
        "m2": str(write_json("m2.json", nilpotent_file(2.0))),
        "m4": str(write_json("m4.json", nilpotent_file(4.0))),
        "disk": str(write_json("disk.json", UNIT_DISK)),
        "annulus": str(
            write_json(
                "annulus.json",
                {"disks": [UNIT_DISK, {"kind": "exterior", "center": [0, 0], "radius": 0.5}]},
            )
        ),
    }


def report_of(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestReports:
    def test_good_disk_failure(self, files, capsys):
        code = run(["good-disk", "--matrix", files["m4"], "--disk", files["disk"]])
        assert code == 1
        report = report_of(capsys)
        assert report["verb"] == "good-disk"
        assert report["exit_code"] == 1
        assert report["grid_risk"] == GRID_RISK
        assert report["result"]["margin"] == pytest.approx(-3.0)
        assert "timestamp" not in report

    def test_timestamps_on_request(self, files, capsys):
        run(["good-disk", "--matrix", files["m2"], "--disk", files["disk"], "--timestamps"])
        assert "timestamp" in report_of(capsys)

    def test_config_echo(self, files, capsys):
        run(["rho", "--matrix", files["m2"], "--rho", "2.5", "--route", "mobius", "--grid", "32"])
        report = report_of(capsys)
        assert report["config"]["rho"] == 2.5
        assert report["config"]["grid"] == 32
        assert report["result"]["route"] == "mobius"
        assert report["exit_code"] == 0

    def test_out_file(self, files, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = run(["hyponormal", "--matrix", files["m2"], "--point", "1,0", "--out", str(out)])
        assert code == 1
        assert capsys.readouterr().out == ""
        result = json.loads(out.read_text(encoding="utf-8"))["result"]
        assert result["resolvent_norm"] > result["inverse_distance"]


class TestVerbs:
    def test_range_csv_on_stdout(self, files, capsys):
        assert run(["range", "--matrix", files["m2"], "--grid", "16"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "re,im"
        assert len(lines) == 17
        for line in lines[1:]:
            re_, im_ = map(float, line.split(","))
            assert abs(complex(re_, im_)) == pytest.approx(1.0)

    def test_range_containment(self, files, tmp_path, capsys):
        csv = tmp_path / "w.csv"
        code = run(["range", "--matrix", files["m4"], "--disk", files["disk"], "--csv", str(csv)])
        assert code == 1
        assert report_of(capsys)["result"]["containment"]["verdict"] is False
        assert csv.read_text(encoding="utf-8").startswith("re,im\n")

    def test_kbound(self, files, capsys):
        code = run(
            ["kbound", "--matrix", files["m4"], "--disk", files["disk"],
             "--degree", "1", "--budget", "2", "--grid", "128"]
        )
        assert code == 0
        result = report_of(capsys)["result"]
        assert result["K_lower"] >= 4.0 - 1e-6
        assert result["poles"] == ["inf"]
        assert result["search"]["restarts"] == 2

    def test_kbound_config_file(self, files, write_json, capsys):
        config = str(write_json("cfg.json", {"degree": 1, "restarts": 1, "grid": 64}))
        code = run(
            ["kbound", "--matrix", files["m2"], "--disk", files["disk"],
             "--config", config, "--seed", "4"]
        )
        assert code == 0
        search = report_of(capsys)["result"]["search"]
        assert (search["degree"], search["restarts"], search["seed"]) == (1, 1, 4)

    def test_blaschke_similarity(self, files, write_json, capsys):
        b = str(write_json("b.json", {"power": 2}))
        code = run(["blaschke-sim", "--matrix", files["m4"], "--blaschke", b])
        assert code == 0
        result = report_of(capsys)["result"]
        assert result["B_T_norm"] == pytest.approx(0.0)
        assert result["contraction_norm"] <= 1.0 + 1e-9
        assert result["defect_identity_residual"] < 1e-9

    def test_geometry(self, files, capsys):
        assert run(["geometry", "--disk", files["disk"], "--radius", "1"]) == 0
        result = report_of(capsys)["result"]
        assert result["components"] == 1
        assert result["exterior_disk"]["passed"]

        assert run(["geometry", "--domain", files["annulus"], "--radius", "1"]) == 1
        assert report_of(capsys)["result"]["components"] == 2

    def test_split(self, files, write_json, capsys):
        f = str(
            write_json(
                "f.json",
                {"terms": [{"pole": [2, 0], "coeff": [0.25, 0]}, {"pole": [-2, 0], "coeff": [-0.25, 0]}]},
            )
        )
        left = str(write_json("left.json", {"disks": [{"kind": "halfplane", "anchor": [1, 0], "direction": [-1, 0]}]}))
        right = str(write_json("right.json", {"disks": [{"kind": "halfplane", "anchor": [-1, 0], "direction": [1, 0]}]}))
        code = run(["split", "--function", f, "--domain", left, "--domain2", right, "--matrix", files["m2"]])
        assert code == 0
        result = report_of(capsys)["result"]
        assert [t["pole"] for t in result["f1"]["terms"]] == [[2.0, 0.0]]
        assert [t["pole"] for t in result["f2"]["terms"]] == [[-2.0, 0.0]]
        assert result["calculus_residual"] < 1e-12

    def test_lemniscate(self, files, write_json, capsys):
        square = str(write_json("square.json", {"terms": [{"pole": "inf", "power": 2}]}))
        assert run(["lemniscate", "--matrix", files["m2"], "--function", square, "--level", "1"]) == 0
        result = report_of(capsys)["result"]
        assert result["level"] == 1.0
        assert result["margin"] == pytest.approx(1.0)

        identity = str(write_json("z.json", {"terms": [{"pole": "inf", "power": 1}]}))
        assert run(["lemniscate", "--matrix", files["m2"], "--function", identity, "--level", "1"]) == 1
        assert report_of(capsys)["result"]["margin"] == pytest.approx(-1.0)

    def test_lemniscate_errors(self, files, write_json, capsys):
        square = str(write_json("square.json", {"terms": [{"pole": "inf", "power": 2}]}))
        assert run(["lemniscate", "--matrix", files["m2"], "--function", square]) == 2
        assert "--level is required" in capsys.readouterr().err

        rational = str(write_json("r.json", {"terms": [{"pole": [2, 0]}]}))
        assert run(["lemniscate", "--matrix", files["m2"], "--function", rational, "--level", "1"]) == 2

        shifted = str(write_json("shifted.json", {"constant": [-1, 0], "terms": [{"pole": "inf", "power": 2}]}))
        assert run(["lemniscate", "--matrix", files["m2"], "--function", shifted, "--level", "1"]) == 3

    def test_gallery_list(self, capsys):
        assert run(["gallery", "list"]) == 0
        names = [item["name"] for item in report_of(capsys)["result"]["items"]]
        assert names == sorted(REGISTRY)

    def test_gallery_three_disk(self, capsys):
        assert run(["gallery", "run", "three-disk", "--epsilon", "0.02"]) == 0
        result = report_of(capsys)["result"]
        assert result["parameters"] == {"epsilon": 0.02}
        assert result["passed"]


class TestExitCodes:
    def test_usage_error(self, capsys):
        assert run([]) == 2
        assert run(["range", "--grid"]) == 2

    def test_version(self, capsys):
        assert run(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert run(["range", "--matrix", str(tmp_path / "absent.json")]) == 2
        assert "cannot read file" in capsys.readouterr().err

    def test_missing_region(self, files, capsys):
        assert run(["kbound", "--matrix", files["m2"]]) == 2
        assert "--domain or --disk" in capsys.readouterr().err

    def test_invalid_values(self, files, capsys):
        assert run(["range", "--matrix", files["m2"], "--grid", "0"]) == 2
        assert run(["rho", "--matrix", files["m2"], "--rho", "3", "--route", "halfplanes"]) == 2
        assert run(["kbound", "--matrix", files["m2"], "--disk", files["disk"], "--s", "9"]) == 2

    def test_invalid_pole_set(self, files, capsys):
        code = run(["kbound", "--matrix", files["m2"], "--domain", files["annulus"], "--poles", "inf"])
        assert code == 3
        assert capsys.readouterr().err.startswith("error: ")

    def test_unmet_precondition(self, files, write_json, capsys):
        b = str(write_json("b.json", {"power": 1}))
        assert run(["blaschke-sim", "--matrix", files["m2"], "--blaschke", b]) == 3

    def test_unknown_gallery_item(self, capsys):
        assert run(["gallery", "run", "nothing"]) == 2


def test_reports_are_deterministic(files, tmp_path):
    out = tmp_path / "k.json"
    argv = ["kbound", "--matrix", files["m2"], "--disk", files["disk"],
            "--degree", "1", "--budget", "2", "--grid", "64", "--out", str(out)]
    assert run(argv) == 0
    first = out.read_bytes()
    assert run(argv) == 0
    assert out.read_bytes() == first


def test_parser_lists_every_verb():
    parser = build_parser()
    args = parser.parse_args(["theorem2", "--matrix", "m.json", "--domain", "d.json"])
    assert args.verb == "theorem2"


def test_validate_inputs_loads_files_and_values(files):
    args = build_parser().parse_args(
        ["kbound", "--matrix", files["m2"], "--disk", files["disk"], "--poles", "inf;3,0"]
    )
    inputs = validate_inputs(args)
    assert inputs["matrix"].shape == (2, 2)
    assert len(inputs["poles"]) == 2

    args.degree = 0
    with pytest.raises(ValidationError, match="--degree must be positive"):
        validate_inputs(args)


def test_piecewise_rejects_other_domains(mocker):
    with pytest.raises(ValidationError, match="circular arcs or disks") as exc_info:
        _piecewise(mocker.Mock(spec=Domain))
    assert exc_info.value.errors == ["--domain"]
