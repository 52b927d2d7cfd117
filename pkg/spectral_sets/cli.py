"""Command-line front end.

Each verb loads its input files, runs one computation and prints a JSON
report (sorted keys, no timestamp unless asked for). Exit codes: 0 on
success or a true verdict, 1 on a false verdict, 2 on usage or input
errors, 3 on numerical failures and unmet preconditions.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from spectral_sets import __version__
from spectral_sets.blaschke import blaschke_on_matrix, defect_identity_residual, similarity_transform
from spectral_sets.classify import (
    ClassifyReport,
    RhoGrid,
    hyponormal_resolvent_identity,
    is_good_disk,
    is_hyponormal,
    is_rho_contraction_disks,
    is_rho_contraction_mobius,
    is_rho_contraction_poisson,
    lemniscate_test,
    numerical_range_boundary,
    tangent_halfplane_sweep,
    theorem2_hypotheses,
    w_contained_in,
)
from spectral_sets.exceptions import SpectralSetsError, ValidationError
from spectral_sets.formats import (
    domain_to_dict,
    load_blaschke,
    load_disk,
    load_domain,
    load_matrix,
    load_rational,
    load_search_config,
    matrix_rational_to_dict,
    matrix_to_dict,
    parse_complex,
    parse_poles,
    points_csv,
    rational_to_dict,
    write_points_csv,
)
from spectral_sets.gallery import get_item, list_items, three_disk_admissible
from spectral_sets.geometry import (
    DiskIntersection,
    Domain,
    PiecewiseCircularDomain,
    as_domain,
    condition_A_check,
    exterior_disk_condition,
    transversal_at,
)
from spectral_sets.ksearch import (
    SearchConfig,
    k_lower_bound,
    result_summary,
    split_by_poles,
    verify_split_calculus,
)
from spectral_sets.logging_config import format_report, set_log_level
from spectral_sets.matcalc import MatrixRational, ScalarRational, encode_complex, opnorm

logger = logging.getLogger(__name__)

GRID_RISK = (
    "Continuum quantifiers (boundaries, angles, radii) were sampled on the "
    "grids recorded in 'config'; verdicts hold on those samples."
)

# File flags and their loaders, validated before any computation
LOADERS: Dict[str, Callable[[Any], Any]] = {
    "matrix": load_matrix,
    "domain": load_domain,
    "domain2": load_domain,
    "disk": load_disk,
    "blaschke": load_blaschke,
    "function": load_rational,
    "config": load_search_config,
}

RHO_ROUTES = ("disks", "poisson", "mobius", "halfplanes")


@dataclass
class Outcome:
    """Result payload of one verb, its exit code and an optional point cloud."""

    result: Dict[str, Any]
    code: int = 0
    points: Optional[np.ndarray] = None


def _verdict_code(report: ClassifyReport) -> int:
    return 0 if report.passed else 1


def _require(inputs: Dict[str, Any], *names: str) -> None:
    missing = [f"--{n}" for n in names if n not in inputs]
    if missing:
        raise ValidationError(f"Missing required input(s): {', '.join(missing)}", errors=missing)


def _region(inputs: Dict[str, Any]) -> Domain:
    if "domain" in inputs:
        return inputs["domain"]
    if "disk" in inputs:
        return as_domain(inputs["disk"])
    raise ValidationError("One of --domain or --disk is required", errors=["--domain", "--disk"])


def _piecewise(domain: Domain) -> PiecewiseCircularDomain:
    if isinstance(domain, DiskIntersection):
        return domain.piecewise
    if not isinstance(domain, PiecewiseCircularDomain):
        raise ValidationError(
            f"Domain must be given by circular arcs or disks, got {type(domain).__name__}",
            errors=["--domain"],
        )
    return domain


def _scalar_function(f: Any) -> ScalarRational:
    if isinstance(f, MatrixRational):
        if f.s != 1:
            raise ValidationError("A scalar rational function is required", errors=["--function"])
        return f[0, 0]
    return f


def cmd_range(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix")
    T = inputs["matrix"]
    points = numerical_range_boundary(T, args.grid)
    result: Dict[str, Any] = {"boundary_points": len(points)}
    code = 0
    if "disk" in inputs:
        report = w_contained_in(T, inputs["disk"], args.grid, args.tol)
        result["containment"] = report.model_dump()
        code = _verdict_code(report)
    return Outcome(result, code, points)


def cmd_rho(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix")
    if args.rho is None:
        raise ValidationError("--rho is required", errors=["--rho"])
    T = inputs["matrix"]
    grid = RhoGrid.default(tangency=args.grid)
    if args.route == "halfplanes":
        if args.rho != 2:
            raise ValidationError("The half-plane route applies to rho = 2 only", errors=["--route"])
        report = tangent_halfplane_sweep(T, grid, args.tol)
    else:
        route = {
            "disks": is_rho_contraction_disks,
            "poisson": is_rho_contraction_poisson,
            "mobius": is_rho_contraction_mobius,
        }[args.route]
        report = route(T, args.rho, grid, args.tol)
    return Outcome({"rho": args.rho, "route": args.route, **report.model_dump()}, _verdict_code(report))


def cmd_good_disk(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix", "disk")
    report = is_good_disk(inputs["matrix"], inputs["disk"], args.tol)
    return Outcome(report.model_dump(), _verdict_code(report))


def cmd_kbound(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix")
    domain = _region(inputs)
    base = inputs["config"].model_dump() if "config" in inputs else {}
    overrides = {
        "degree": args.degree,
        "s": args.s,
        "grid": args.grid,
        "restarts": args.budget,
        "seed": args.seed,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = SearchConfig.model_validate(base)
    except PydanticValidationError as e:
        raise ValidationError(
            f"Invalid search configuration: {e.errors()[0]['msg']}",
            errors=[str(err["loc"][0]) for err in e.errors()],
        ) from e

    result = k_lower_bound(inputs["matrix"], domain, inputs["poles"], cfg)
    payload = result_summary(result)
    payload["function"] = matrix_rational_to_dict(result.function)
    payload["poles"] = [encode_complex(p) for p in inputs["poles"]]
    payload["search"] = cfg.model_dump()
    return Outcome(payload)


def cmd_blaschke_sim(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix", "blaschke")
    T, B = inputs["matrix"], inputs["blaschke"]
    sim = similarity_transform(B, T)
    n = T.shape[0]
    defect = max(defect_identity_residual(B, T, np.eye(n)[k]) for k in range(n))
    return Outcome(
        {
            "blaschke": B.to_dict(),
            "B_T_norm": opnorm(blaschke_on_matrix(B, T)),
            "contraction_norm": sim.contraction_norm,
            "condition_number": sim.condition_number,
            "defect_identity_residual": defect,
            "S": matrix_to_dict(sim.S),
        }
    )


def cmd_geometry(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    domain = _region(inputs)
    pc = _piecewise(domain)
    condition = condition_A_check(pc, tol=args.tol or 1e-9)
    result: Dict[str, Any] = {
        "domain": domain_to_dict(domain),
        "components": domain.component_count,
        "complement_points": [encode_complex(p) for p in domain.complement_points],
        "boundary_length": pc.total_length,
        "vertices": [encode_complex(z) for _, _, z in pc.vertices()],
        "condition": condition.model_dump(),
    }
    passed = condition.passed
    if args.radius is not None:
        exterior = exterior_disk_condition(pc, args.radius)
        result["exterior_disk"] = exterior.model_dump()
        passed = passed and exterior.passed
    if "domain2" in inputs:
        if "point" not in inputs:
            raise ValidationError("--domain2 needs --point", errors=["--point"])
        transversal = transversal_at(domain, inputs["domain2"], inputs["point"])
        result["transversality"] = transversal.model_dump()
        passed = passed and transversal.transversal
    points = pc.boundary_grid(args.grid) if args.csv else None
    return Outcome(result, 0 if passed else 1, points)


def cmd_theorem2(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix", "domain")
    report = theorem2_hypotheses(inputs["matrix"], _piecewise(inputs["domain"]), args.tol)
    return Outcome(report.model_dump(), 0 if report.passed else 1)


def cmd_hyponormal(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix")
    report = is_hyponormal(inputs["matrix"], args.tol)
    result = report.model_dump()
    if "point" in inputs:
        lhs, rhs = hyponormal_resolvent_identity(inputs["matrix"], inputs["point"])
        result["resolvent_norm"] = lhs
        result["inverse_distance"] = rhs
    return Outcome(result, _verdict_code(report))


def cmd_split(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "function", "domain", "domain2")
    f = _scalar_function(inputs["function"])
    f1, f2 = split_by_poles(f, inputs["domain"], inputs["domain2"])
    result: Dict[str, Any] = {"f1": rational_to_dict(f1), "f2": rational_to_dict(f2)}
    if "matrix" in inputs:
        result["calculus_residual"] = verify_split_calculus(
            f, inputs["matrix"], inputs["domain"], inputs["domain2"]
        )
    return Outcome(result)


def cmd_lemniscate(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    _require(inputs, "matrix", "function")
    if args.level is None:
        raise ValidationError("--level is required", errors=["--level"])
    p = _scalar_function(inputs["function"])
    report = lemniscate_test(inputs["matrix"], p, args.level, args.tol)
    return Outcome({"level": args.level, **report.model_dump()}, _verdict_code(report))


def cmd_gallery(args: argparse.Namespace, inputs: Dict[str, Any]) -> Outcome:
    if args.action == "list":
        return Outcome({"items": list_items()})
    if not args.name:
        raise ValidationError("gallery run needs an item name", errors=["name"])
    if args.name == "three-disk" and args.epsilon is not None:
        item = three_disk_admissible(args.epsilon)
    else:
        item = get_item(args.name)
    report = item.to_dict()
    return Outcome(report, 0 if report["passed"] else 1)


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any]], Outcome]] = {
    "range": cmd_range,
    "rho": cmd_rho,
    "good-disk": cmd_good_disk,
    "kbound": cmd_kbound,
    "blaschke-sim": cmd_blaschke_sim,
    "geometry": cmd_geometry,
    "theorem2": cmd_theorem2,
    "hyponormal": cmd_hyponormal,
    "split": cmd_split,
    "lemniscate": cmd_lemniscate,
    "gallery": cmd_gallery,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="Write the JSON report here instead of stdout")
    common.add_argument("--csv", type=Path, help="Write point clouds here (header re,im)")
    common.add_argument("--tol", type=float, help="Absolute tolerance (default: 1e-9 (1 + ||T||))")
    common.add_argument("--log-level", default="WARNING", help="Logging level (default: WARNING)")
    common.add_argument("--timestamps", action="store_true", help="Add a UTC timestamp to reports")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--matrix", type=Path, help="Matrix file")
    files.add_argument("--domain", type=Path, help="Domain file (curves or disks)")
    files.add_argument("--disk", type=Path, help="Generalized disk file")

    parser = argparse.ArgumentParser(
        prog="spectral-sets",
        description="Spectral-set and K-spectral-set computations on small matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = verbs.add_parser("range", parents=[common, files], help="Numerical range boundary")
    p.add_argument("--grid", type=int, default=256, help="Number of angles (default: 256)")

    p = verbs.add_parser("rho", parents=[common, files], help="rho-contraction test")
    p.add_argument("--rho", type=float, help="rho >= 1")
    p.add_argument("--route", choices=RHO_ROUTES, default="disks", help="Criterion (default: disks)")
    p.add_argument("--grid", type=int, default=256, help="Tangency points (default: 256)")

    verbs.add_parser("good-disk", parents=[common, files], help="Good-disk test")

    p = verbs.add_parser("kbound", parents=[common, files], help="K lower-bound search")
    p.add_argument("--poles", default="inf", help="';'-separated poles (default: inf)")
    p.add_argument("--degree", type=int, help="Powers per pole (default: 3)")
    p.add_argument("--s", type=int, help="Coefficient matrix size, 1..4 (default: 1)")
    p.add_argument("--grid", type=int, help="Boundary grid (default: 1024)")
    p.add_argument("--budget", type=int, help="Random restarts (default: 8)")
    p.add_argument("--seed", type=int, help="Master seed (default: 0)")
    p.add_argument("--config", type=Path, help="SearchConfig JSON; flags override it")

    p = verbs.add_parser("blaschke-sim", parents=[common, files], help="Similarity to a contraction")
    p.add_argument("--blaschke", type=Path, help="Blaschke product file")

    p = verbs.add_parser("geometry", parents=[common, files], help="Domain predicates")
    p.add_argument("--domain2", type=Path, help="Second domain for transversality")
    p.add_argument("--point", help="Boundary point: 're,im', '1+2j' or 'inf'")
    p.add_argument("--radius", type=float, help="Exterior disk radius R to check")
    p.add_argument("--grid", type=int, default=256, help="Boundary points for --csv (default: 256)")

    p = verbs.add_parser("theorem2", parents=[common, files], help="Per-arc resolvent hypotheses")

    p = verbs.add_parser("hyponormal", parents=[common, files], help="Hyponormality test")
    p.add_argument("--point", help="Point for the resolvent-distance identity")

    p = verbs.add_parser("split", parents=[common, files], help="Separate singularities by domain")
    p.add_argument("--function", type=Path, help="Rational function file")
    p.add_argument("--domain2", type=Path, help="Second domain")

    p = verbs.add_parser("lemniscate", parents=[common, files], help="Lemniscate test ||p(T)|| <= R")
    p.add_argument("--function", type=Path, help="Polynomial file")
    p.add_argument("--level", type=float, help="Level R of the lemniscate |p| <= R")

    p = verbs.add_parser("gallery", parents=[common], help="Explicit examples")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", help="Item name for 'run'")
    p.add_argument("--epsilon", type=float, help="Side length for three-disk")
    return parser


def validate_inputs(args: argparse.Namespace) -> Dict[str, Any]:
    """Load and validate every file and value flag of the invocation.

    Raises:
        ValidationError: On the first invalid input
    """
    inputs: Dict[str, Any] = {}
    for key, loader in LOADERS.items():
        path = getattr(args, key, None)
        if path is not None:
            inputs[key] = loader(path)
    if getattr(args, "point", None) is not None:
        inputs["point"] = parse_complex(args.point)
    if getattr(args, "poles", None) is not None:
        inputs["poles"] = parse_poles(args.poles)
    for name in ("grid", "budget", "degree", "s"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise ValidationError(f"--{name} must be positive, got {value}", errors=[f"--{name}"])
    return inputs


def _config(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in sorted(vars(args).items())
        if k not in ("log_level", "timestamps")
    }


def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(complex(value))
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def render_report(args: argparse.Namespace, outcome: Outcome) -> str:
    report: Dict[str, Any] = {
        "verb": args.verb,
        "config": _config(args),
        "grid_risk": GRID_RISK,
        "result": outcome.result,
        "exit_code": outcome.code,
    }
    if args.timestamps:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def _emit(args: argparse.Namespace, outcome: Outcome) -> None:
    csv_to_stdout = outcome.points is not None and args.csv is None
    if outcome.points is not None and args.csv is not None:
        write_points_csv(args.csv, outcome.points)
    if csv_to_stdout:
        sys.stdout.write(points_csv(outcome.points))

    text = render_report(args, outcome)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    elif not csv_to_stdout:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run the verb and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    set_log_level(args.log_level)
    try:
        inputs = validate_inputs(args)
        outcome = COMMANDS[args.verb](args, inputs)
        logger.debug(f"{args.verb} result: {format_report(outcome.result)}")
        _emit(args, outcome)
        return outcome.code
    except SpectralSetsError as e:
        logger.debug(f"{type(e).__name__}: {e.message}")
        sys.stderr.write(f"error: {e.message}\n")
        return e.exit_code
    except np.linalg.LinAlgError as e:
        sys.stderr.write(f"error: linear algebra failure: {e}\n")
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
