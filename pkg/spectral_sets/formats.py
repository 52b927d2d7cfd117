"""JSON file formats: schemas, loaders and writers.

Every loader parses with json, validates the layout with a pydantic schema
and then builds the target type, whose own invariants are enforced by its
constructor. Failures are reported as ValidationError with messages of the
form ``<file>:<line>: <path>: <reason>``.
"""

import json
import logging
import re
from pathlib import Path
from typing import (
    Annotated,
    Any,
    Callable,
    Dict,
    List,
    Literal,
    Optional,
    Tuple,
    Type,
    TypeVar,
    Union,
)

import numpy as np
import pydantic
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from spectral_sets.blaschke import BlaschkeProduct
from spectral_sets.exceptions import ValidationError
from spectral_sets.geometry import (
    CircularArc,
    ClosedDisk,
    DiskIntersection,
    Domain,
    ExteriorData,
    ExteriorDisk,
    GeneralizedDisk,
    HalfPlane,
    PiecewiseCircularDomain,
)
from spectral_sets.ksearch import SearchConfig
from spectral_sets.matcalc import (
    ExtendedComplex,
    MatrixRational,
    ScalarRational,
    as_matrix,
    decode_complex,
    encode_complex,
)

logger = logging.getLogger(__name__)

Source = Union[str, Path]

SchemaT = TypeVar("SchemaT", bound=BaseModel)
BuiltT = TypeVar("BuiltT")


def _complex_value(value: Any) -> complex:
    try:
        return decode_complex(value)
    except ValidationError as e:
        raise ValueError(e.message) from e


ComplexValue = Annotated[Any, BeforeValidator(_complex_value)]


class _Schema(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class MatrixSchema(_Schema):
    dim: Optional[int] = Field(default=None, ge=1)
    entries: List[List[ComplexValue]]

    @model_validator(mode="after")
    def _dim_matches(self) -> "MatrixSchema":
        if self.dim is not None and len(self.entries) != self.dim:
            raise ValueError(f"dim is {self.dim} but entries has {len(self.entries)} rows")
        return self


class TermSchema(_Schema):
    pole: ComplexValue
    power: int = Field(default=1, ge=1)
    coeff: ComplexValue = 1.0


class RationalSchema(_Schema):
    constant: ComplexValue = 0.0
    terms: List[TermSchema] = Field(default_factory=list)


class MatrixRationalSchema(_Schema):
    s: Optional[int] = Field(default=None, ge=1)
    entries: List[List[RationalSchema]]


class ArcSchema(_Schema):
    center: ComplexValue
    radius: float = Field(gt=0)
    start: float = Field(alias="from")
    end: float = Field(alias="to")


class CurveSchema(_Schema):
    arcs: List[ArcSchema] = Field(min_length=1)


class ExteriorSchema(_Schema):
    arc: int = Field(ge=0)
    R: float = Field(gt=0)
    centers: List[Annotated[List[float], Field(min_length=4, max_length=4)]] = Field(min_length=1)


class DiskSchema(_Schema):
    kind: Literal["closed", "exterior", "halfplane"]
    center: Optional[ComplexValue] = None
    radius: Optional[float] = Field(default=None, gt=0)
    anchor: Optional[ComplexValue] = None
    direction: Optional[ComplexValue] = None

    @model_validator(mode="after")
    def _fields_for_kind(self) -> "DiskSchema":
        if self.kind == "halfplane":
            if self.anchor is None or self.direction is None:
                raise ValueError("a half-plane needs 'anchor' and 'direction'")
        elif self.center is None or self.radius is None:
            raise ValueError(f"a {self.kind} disk needs 'center' and 'radius'")
        return self


class DomainSchema(_Schema):
    curves: Optional[List[CurveSchema]] = None
    exterior: List[ExteriorSchema] = Field(default_factory=list)
    complement_points: Optional[List[ComplexValue]] = None
    disks: Optional[List[DiskSchema]] = None

    @model_validator(mode="after")
    def _one_description(self) -> "DomainSchema":
        if (self.curves is None) == (self.disks is None):
            raise ValueError("a domain needs exactly one of 'curves' or 'disks'")
        if self.disks is not None and (self.exterior or self.complement_points is not None):
            raise ValueError("'exterior' and 'complement_points' only apply to 'curves'")
        return self


class BlaschkeSchema(_Schema):
    theta: float = 0.0
    zeros: List[ComplexValue] = Field(default_factory=list)
    power: int = Field(default=0, ge=0)
    normalization: Literal["plain", "mascioni"] = "plain"


def format_path(loc: Tuple[Union[str, int], ...]) -> str:
    """('curves', 0, 'arcs', 2) -> 'curves[0].arcs[2]'."""
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out or "<root>"


def locate(text: str, path: str) -> int:
    """Best-effort 1-based line of ``path`` in the JSON text.

    Keys are searched in order, each after the previous match; list indices
    are skipped.
    """
    position = 0
    for key in re.findall(r"[A-Za-z_][A-Za-z_0-9]*", path):
        match = re.compile(rf'"{re.escape(key)}"\s*:').search(text, position)
        if match is None:
            break
        position = match.start()
    return text.count("\n", 0, position) + 1


def _anchored(source: str, text: str, path: str, reason: str) -> str:
    return f"{source}:{locate(text, path)}: {path}: {reason}"


def _read(source: Source) -> Tuple[Any, str, str]:
    name = str(source)
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"{name}: cannot read file: {e.strerror}") from e
    return (*_loads(text, name), name)


def _loads(text: str, name: str) -> Tuple[Any, str]:
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise ValidationError(
            f"{name}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}",
            errors=[f"{name}:{e.lineno}"],
        ) from e


def _validate(schema: Type[SchemaT], data: Any, text: str, name: str) -> SchemaT:
    try:
        return schema.model_validate(data)
    except pydantic.ValidationError as e:
        errors = [
            _anchored(name, text, format_path(tuple(err["loc"])), err["msg"]) for err in e.errors()
        ]
        raise ValidationError(errors[0], errors=errors) from e


def _build(factory: Callable[[], BuiltT], text: str, name: str) -> BuiltT:
    try:
        return factory()
    except ValidationError as e:
        paths = e.errors or ["<root>"]
        errors = [_anchored(name, text, path, e.message) for path in paths]
        raise ValidationError(errors[0], errors=errors, details=e.details) from e


def matrix_from_schema(schema: MatrixSchema) -> np.ndarray:
    return as_matrix(schema.entries, name="entries")


def rational_from_schema(schema: RationalSchema) -> ScalarRational:
    return ScalarRational(schema.constant, [((t.pole, t.power), t.coeff) for t in schema.terms])


def disk_from_schema(schema: DiskSchema) -> GeneralizedDisk:
    if schema.kind == "closed":
        return ClosedDisk(schema.center, schema.radius)
    if schema.kind == "exterior":
        return ExteriorDisk(schema.center, schema.radius)
    return HalfPlane(schema.anchor, schema.direction)


def domain_from_schema(schema: DomainSchema) -> Domain:
    if schema.disks is not None:
        return DiskIntersection([disk_from_schema(d) for d in schema.disks])
    if schema.curves is None:
        raise ValidationError("A domain needs exactly one of 'curves' or 'disks'", errors=["curves", "disks"])
    curves = [
        [CircularArc(a.center, a.radius, a.start, a.end) for a in curve.arcs]
        for curve in schema.curves
    ]
    exterior: Dict[int, ExteriorData] = {}
    for k, item in enumerate(schema.exterior):
        if item.arc in exterior:
            raise ValidationError(
                f"Duplicate exterior data for arc {item.arc}", errors=[f"exterior[{k}].arc"]
            )
        exterior[item.arc] = ExteriorData(
            item.R, [(complex(c[0], c[1]), complex(c[2], c[3])) for c in item.centers]
        )
    return PiecewiseCircularDomain(curves, exterior, schema.complement_points)


def blaschke_from_schema(schema: BlaschkeSchema) -> BlaschkeProduct:
    return BlaschkeProduct(
        theta=schema.theta,
        zeros=tuple(schema.zeros),
        power=schema.power,
        normalization=schema.normalization,
    )


def load_matrix(source: Source) -> np.ndarray:
    """Load a matrix file {"dim": n, "entries": [[[re, im], ...], ...]}.

    Raises:
        ValidationError: On malformed JSON, bad layout or a non-finite entry
    """
    data, text, name = _read(source)
    schema = _validate(MatrixSchema, data, text, name)
    return _build(lambda: matrix_from_schema(schema), text, name)


def load_rational(source: Source) -> Union[ScalarRational, MatrixRational]:
    """Load a scalar rational file, or an s x s grid {"s": s, "entries": [[...]]}."""
    data, text, name = _read(source)
    if isinstance(data, dict) and "entries" in data:
        schema = _validate(MatrixRationalSchema, data, text, name)

        def build() -> MatrixRational:
            if schema.s is not None and len(schema.entries) != schema.s:
                raise ValidationError(
                    f"s is {schema.s} but entries has {len(schema.entries)} rows", errors=["entries"]
                )
            return MatrixRational([[rational_from_schema(f) for f in row] for row in schema.entries])

        return _build(build, text, name)
    scalar = _validate(RationalSchema, data, text, name)
    return _build(lambda: rational_from_schema(scalar), text, name)


def load_domain(source: Source) -> Domain:
    """Load a domain file holding "curves" or "disks".

    Raises:
        ValidationError: On bad layout, unclosed chains (naming the gap) or
            inconsistent exterior data
    """
    data, text, name = _read(source)
    schema = _validate(DomainSchema, data, text, name)
    return _build(lambda: domain_from_schema(schema), text, name)


def load_disk(source: Source) -> GeneralizedDisk:
    """Load a single generalized disk."""
    data, text, name = _read(source)
    schema = _validate(DiskSchema, data, text, name)
    return _build(lambda: disk_from_schema(schema), text, name)


def load_blaschke(source: Source) -> BlaschkeProduct:
    """Load a Blaschke file; zeros must satisfy |lambda| < 1."""
    data, text, name = _read(source)
    schema = _validate(BlaschkeSchema, data, text, name)
    return _build(lambda: blaschke_from_schema(schema), text, name)


def load_search_config(source: Source) -> SearchConfig:
    data, text, name = _read(source)
    return _validate(SearchConfig, data, text, name)


def parse_complex(text: str) -> ExtendedComplex:
    """Parse "inf", "re,im" or a Python complex literal such as "1-2j".

    Raises:
        ValidationError: If the text is not a complex number
    """
    value = text.strip()
    if "," in value:
        parts = value.split(",")
        if len(parts) != 2:
            raise ValidationError(f"Expected 're,im', got {text!r}")
        try:
            return decode_complex([float(parts[0]), float(parts[1])])
        except ValueError as e:
            raise ValidationError(f"Invalid complex number {text!r}") from e
    try:
        return decode_complex(value)
    except ValidationError:
        pass
    try:
        return complex(value.replace(" ", "").replace("i", "j"))
    except ValueError as e:
        raise ValidationError(f"Invalid complex number {text!r}") from e


def parse_poles(text: str) -> List[ExtendedComplex]:
    """Parse a ';'-separated pole list, e.g. "inf;0.5+0j"."""
    items = [p for p in text.split(";") if p.strip()]
    if not items:
        raise ValidationError("Pole list is empty")
    return [parse_complex(p) for p in items]


def matrix_to_dict(T: np.ndarray) -> Dict[str, Any]:
    return {"dim": int(T.shape[0]), "entries": [[encode_complex(x) for x in row] for row in T]}


def rational_to_dict(f: ScalarRational) -> Dict[str, Any]:
    return {
        "constant": encode_complex(f.constant),
        "terms": [
            {"pole": encode_complex(pole), "power": power, "coeff": encode_complex(c)}
            for (pole, power), c in f.terms
        ],
    }


def matrix_rational_to_dict(F: MatrixRational) -> Dict[str, Any]:
    """Scalar functions are written in the scalar format."""
    if F.s == 1:
        return rational_to_dict(F[0, 0])
    return {"s": F.s, "entries": [[rational_to_dict(f) for f in row] for row in F.entries]}


def domain_to_dict(domain: Domain) -> Dict[str, Any]:
    if isinstance(domain, DiskIntersection):
        return {"disks": [d.to_dict() for d in domain.disks]}
    if isinstance(domain, PiecewiseCircularDomain):
        return domain.to_dict()
    raise ValidationError(f"Cannot serialize domain of type {type(domain).__name__}")


def points_csv(points: np.ndarray) -> str:
    """CSV text of a point cloud with header "re,im"."""
    values = np.asarray(points, dtype=complex).ravel().tolist()
    return "\n".join(["re,im"] + [f"{z.real!r},{z.imag!r}" for z in values]) + "\n"


def write_points_csv(path: Source, points: np.ndarray) -> None:
    Path(path).write_text(points_csv(points), encoding="utf-8")
    logger.debug(f"Wrote {np.size(points)} points to {path}")
