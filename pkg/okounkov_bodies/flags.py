"""
Admissible flags X_0 ⊆ X_1 ⊆ ... ⊆ X_n and their validation.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .linalg import QMatrix, QVector, determinant, gauss_solve, rank
from .models import Model, ProjectiveModel, ToricModel, restriction_degree, restriction_matrix
from .polyring import CurveParam, MultiPoly, parse_poly, pullback, quadric_matrix
from .polytope import VPolytope, is_edge
from .utils import ConfigError, ContractViolation, FlagCheckDict, HypothesisMismatch, OkounkovError

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
USER_ASSERTED = "user-asserted"


@dataclass(frozen=True)
class CoordinateFlag:
    """
    The flag of coordinate subspaces of P^n cut out in the given variable order.

    With order (σ_0, ..., σ_n), X_i = {z_{σ_{i+1}} = ... = z_{σ_n} = 0} and the
    flag point is the coordinate point of z_{σ_0}.
    """
    order: Tuple[int, ...]

    variant = "coordinate"

    def __post_init__(self) -> None:
        order = tuple(int(i) for i in self.order)
        if len(order) < 2 or sorted(order) != list(range(len(order))):
            raise ContractViolation(f"Coordinate order {order} is not a permutation of 0..{len(order) - 1}")
        object.__setattr__(self, "order", order)

    @classmethod
    def standard(cls, n: int) -> "CoordinateFlag":
        return cls(tuple(range(n + 1)))

    @property
    def point(self) -> Tuple[int, ...]:
        return tuple(1 if i == self.order[0] else 0 for i in range(len(self.order)))

    def section_for_step(self, i: int) -> MultiPoly:
        """The coordinate cutting X_{i-1} inside X_i."""
        return MultiPoly.variable(len(self.order), self.order[i])

    def rescaled(self, m: int) -> "CoordinateFlag":
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "order": list(self.order)}


@dataclass(frozen=True)
class CurveFlag:
    """
    {p} ⊂ X_1 = {ξ_1 = 0} ⊂ P^2 with X_1 parametrized by `param`, p = param(t = 0).
    """
    xi1: MultiPoly
    param: CurveParam

    variant = "curve"

    def __post_init__(self) -> None:
        if self.xi1.is_zero() or not self.xi1.is_homogeneous() or self.xi1.is_constant():
            raise ContractViolation(f"ξ_1 must be a nonconstant form, got {self.xi1}")
        if self.xi1.num_vars != self.param.ambient_vars:
            raise ContractViolation(
                f"ξ_1 has {self.xi1.num_vars} variables, parametrization {self.param.ambient_vars} components"
            )

    @property
    def curve_degree(self) -> int:
        return self.xi1.homogeneous_degree()

    @property
    def point(self) -> Tuple[Fraction, ...]:
        return self.param.base_point()

    def rescaled(self, m: int) -> "CurveFlag":
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "xi1": str(self.xi1), "param": self.param.to_strings()}


@dataclass(frozen=True)
class ToricVertexFlag:
    """
    The torus-invariant flag at a smooth vertex of a lattice polytope.

    Coordinate i of the valuation reads the lattice coordinate along
    edges[i-1]; X_1 is the invariant curve of edges[0].
    """
    vertex: Tuple[int, ...]
    edges: Tuple[Tuple[int, ...], ...]

    variant = "toric_vertex"

    def __post_init__(self) -> None:
        vertex = tuple(int(c) for c in self.vertex)
        edges = tuple(tuple(int(c) for c in e) for e in self.edges)
        if not vertex:
            raise ContractViolation("Toric flag vertex is empty")
        if len(edges) != len(vertex) or any(len(e) != len(vertex) for e in edges):
            raise ContractViolation(f"Toric flag needs {len(vertex)} edge directions of length {len(vertex)}")
        if any(all(c == 0 for c in e) for e in edges):
            raise ContractViolation("Edge directions must be nonzero")
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "edges", edges)

    @cached_property
    def _inverse_columns(self) -> Optional[QMatrix]:
        n = len(self.vertex)
        edge_matrix = QMatrix.from_rows(self.edges, n).transpose()
        columns = []
        for i in range(n):
            column = gauss_solve(edge_matrix, QVector.unit(n, i))
            if column is None:
                return None
            columns.append(column)
        return QMatrix(tuple(columns), n).transpose()

    def edge_coordinates(self, point: Sequence[int], k: int = 1) -> Tuple[Fraction, ...]:
        """Coordinates c of point - k·vertex in the edge basis."""
        inverse = self._inverse_columns
        if inverse is None:
            raise ContractViolation("Edge directions are linearly dependent")
        shifted = QVector(tuple(p - k * v for p, v in zip(point, self.vertex)))
        return inverse.apply(shifted).coords

    def rescaled(self, m: int) -> "ToricVertexFlag":
        return ToricVertexFlag(tuple(m * c for c in self.vertex), self.edges)

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "vertex": list(self.vertex), "edges": [list(e) for e in self.edges]}


FlagSpec = Union[CoordinateFlag, CurveFlag, ToricVertexFlag]


def flag_from_config(data: Dict[str, Any], model: Optional[Model] = None) -> FlagSpec:
    """
    Build a flag from its config table.

    Args:
        data: {variant: "coordinate", order}, {variant: "curve", xi1, param}
            or {variant: "toric_vertex", vertex, edges}
        model: Used to default the coordinate order to 0..n

    Raises:
        ConfigError: If the table is structurally malformed
    """
    if not isinstance(data, dict):
        raise ConfigError("Flag config must be a table")
    variant = data.get("variant")
    try:
        if variant == "coordinate":
            order = data.get("order")
            if order is None:
                if not isinstance(model, ProjectiveModel):
                    raise ConfigError("Coordinate flag without 'order' needs a projective model")
                order = list(range(model.n + 1))
            return CoordinateFlag(tuple(order))
        if variant == "curve":
            num_vars = len(data["param"])
            return CurveFlag(parse_poly(data["xi1"], num_vars=num_vars),
                             CurveParam.from_strings(data["param"]))
        if variant == "toric_vertex":
            return ToricVertexFlag(tuple(data["vertex"]), tuple(tuple(e) for e in data["edges"]))
    except KeyError as e:
        raise ConfigError(f"Flag config is missing key {e}") from e
    except (ContractViolation, TypeError, ValueError) as e:
        raise ConfigError(f"Malformed flag config: {e}") from e
    raise ConfigError(f"Unknown flag variant {variant!r}")


@dataclass(frozen=True)
class FlagCheck:
    name: str
    status: str
    detail: str

    def to_dict(self) -> FlagCheckDict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class FlagValidationReport:
    """
    Outcome of validate_flag: one entry per flag hypothesis.
    """
    variant: str
    checks: Tuple[FlagCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        """True when no check failed (user-asserted checks do not count as failures)."""
        return all(c.status != FAIL for c in self.checks)

    @property
    def user_asserted(self) -> List[str]:
        return [c.name for c in self.checks if c.status == USER_ASSERTED]

    def failures(self) -> List[FlagCheck]:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _check(name: str, passed: bool, detail: str) -> FlagCheck:
    return FlagCheck(name, PASS if passed else FAIL, detail)


def _coordinate_checks(model: Model, flag: CoordinateFlag) -> List[FlagCheck]:
    if not isinstance(model, ProjectiveModel):
        return [_check("model_type", False, f"coordinate flags need a projective model, got {model}")]
    checks = [_check("model_type", True, str(model))]
    checks.append(_check(
        "order_is_permutation",
        len(flag.order) == model.num_vars,
        f"order {list(flag.order)} for {model.num_vars} variables",
    ))
    return checks


def _xi1_geometry_checks(xi1: MultiPoly) -> List[FlagCheck]:
    degree = xi1.homogeneous_degree()
    if degree == 1:
        return [
            _check("xi1_smooth", True, "nonzero linear form"),
            _check("xi1_irreducible", True, "nonzero linear form"),
        ]
    if degree == 2:
        quadric_rank = rank(quadric_matrix(xi1))
        full = quadric_rank == xi1.num_vars
        detail = f"symmetric matrix rank {quadric_rank} of {xi1.num_vars}"
        return [_check("xi1_smooth", full, detail), _check("xi1_irreducible", full, detail)]
    detail = f"degree {degree} form; not certified"
    return [
        FlagCheck("xi1_smooth", USER_ASSERTED, detail),
        FlagCheck("xi1_irreducible", USER_ASSERTED, detail),
    ]


def _curve_checks(model: Model, flag: CurveFlag) -> List[FlagCheck]:
    if not isinstance(model, ProjectiveModel) or model.n != 2:
        return [_check("model_type", False, f"curve flags need P^2, got {model}")]
    checks = [_check("model_type", True, str(model))]
    checks.append(_check(
        "curve_degree_supported",
        flag.curve_degree in (1, 2) and flag.param.degree == flag.curve_degree,
        f"ξ_1 of degree {flag.curve_degree}, parametrization of degree {flag.param.degree}",
    ))
    checks.extend(_xi1_geometry_checks(flag.xi1))
    on_curve = pullback(flag.xi1, flag.param).is_zero()
    checks.append(_check("param_on_curve", on_curve, "pullback of ξ_1 vanishes identically" if on_curve
                         else f"pullback of ξ_1 is {pullback(flag.xi1, flag.param).format(('u', 't'))}"))
    checks.append(_check(
        "param_no_common_zero",
        flag.param.has_no_common_zero(),
        f"components sampled at {len(flag.param.sample_parameters())} parameter values",
    ))
    try:
        b = restriction_degree(model, flag)
        checks.append(_check("restriction_degree", True, f"b = d·e = {b}"))
        level_one_rank = rank(restriction_matrix(model, flag, 1))
        checks.append(_check(
            "restriction_surjective",
            level_one_rank == b + 1,
            f"rank of R_1 is {level_one_rank}, target dimension {b + 1}",
        ))
    except OkounkovError as e:
        checks.append(_check("restriction_degree", False, str(e)))
    return checks


def _runs_along_edge(polytope: VPolytope, vertex: QVector, direction: Sequence[int]) -> bool:
    start = polytope.vertices.index(vertex)
    e = QVector(tuple(direction))
    for end, other in enumerate(polytope.vertices):
        d = other - vertex
        if end == start or d.dot(e) <= 0 or rank(QMatrix((d, e), len(e))) != 1:
            continue
        return is_edge(polytope, start, end)
    return False


def _toric_checks(model: Model, flag: ToricVertexFlag) -> List[FlagCheck]:
    if not isinstance(model, ToricModel):
        return [_check("model_type", False, f"toric vertex flags need a toric model, got {model}")]
    checks = [_check("model_type", True, str(model))]
    n = model.dimension
    checks.append(_check("edge_count", len(flag.vertex) == n, f"{len(flag.edges)} edges in dimension {n}"))
    if len(flag.vertex) != n:
        return checks
    vertex = QVector(tuple(flag.vertex))
    checks.append(_check("vertex_is_polytope_vertex", vertex in model.polytope.vertices, f"vertex {vertex}"))
    if vertex in model.polytope.vertices:
        missing = [e for e in flag.edges if not _runs_along_edge(model.polytope, vertex, e)]
        checks.append(_check(
            "edges_are_polytope_edges",
            not missing,
            f"directions {missing} are not edges at the vertex" if missing else "every direction spans an edge of P",
        ))
    det = determinant(QMatrix.from_rows(flag.edges, n))
    checks.append(_check("edges_unimodular", abs(det) == 1, f"edge determinant {det}"))
    if abs(det) != 1:
        return checks
    coordinates = [flag.edge_coordinates([int(c) for c in v]) for v in model.polytope.vertices]
    checks.append(_check(
        "vertex_cone_contains_polytope",
        all(c >= 0 for coords in coordinates for c in coords),
        "every polytope vertex has nonnegative edge coordinates",
    ))
    try:
        b = restriction_degree(model, flag)
        checks.append(_check("restriction_degree", True, f"first edge has lattice length {b}"))
    except OkounkovError as e:
        checks.append(_check("restriction_degree", False, str(e)))
    return checks


def validate_flag(model: Model, flag: FlagSpec) -> FlagValidationReport:
    """
    Test every mechanically checkable flag hypothesis exactly.

    Hypotheses that cannot be certified (irreducibility and smoothness of
    forms of degree 3 and higher) are reported as user-asserted.

    Raises:
        ContractViolation: If `flag` is not a flag specification
    """
    if isinstance(flag, CoordinateFlag):
        checks = _coordinate_checks(model, flag)
    elif isinstance(flag, CurveFlag):
        checks = _curve_checks(model, flag)
    elif isinstance(flag, ToricVertexFlag):
        checks = _toric_checks(model, flag)
    else:
        raise ContractViolation(f"Not a flag specification: {flag!r}")
    report = FlagValidationReport(flag.variant, tuple(checks))
    for name in report.user_asserted:
        logger.warning(f"Flag check '{name}' is user-asserted, not certified")
    return report


def complete_intersection_reason(model: Model, flag: FlagSpec) -> Optional[str]:
    """
    None when the flag is cut out by sections of L itself; otherwise the
    hypothesis that fails.
    """
    if isinstance(flag, CoordinateFlag):
        if not isinstance(model, ProjectiveModel):
            return "coordinate flags need a projective model"
        if model.d != 1:
            return f"flag sections have degree 1 but L = O({model.d})"
        return None
    if isinstance(flag, CurveFlag):
        if not isinstance(model, ProjectiveModel) or model.n != 2:
            return "curve flags need P^2"
        if flag.curve_degree != model.d:
            return f"ξ_1 has degree {flag.curve_degree} but L = O({model.d})"
        return None
    return "toric vertex flags are torus-invariant, not cut out by sections of L"


def is_complete_intersection(model: Model, flag: FlagSpec) -> bool:
    return complete_intersection_reason(model, flag) is None


def flag_vertex_sections(model: Model, flag: FlagSpec) -> List[Tuple[MultiPoly, Tuple[int, ...]]]:
    """
    The flag sections ξ_{n-i+1} paired with the unit vectors e_i, i = n, ..., 2.

    Raises:
        HypothesisMismatch: If the flag is not cut out by sections of L
    """
    reason = complete_intersection_reason(model, flag)
    if reason is not None:
        raise HypothesisMismatch(reason)
    n = model.dimension

    def unit(i: int) -> Tuple[int, ...]:
        return tuple(1 if j == i - 1 else 0 for j in range(n))

    if isinstance(flag, CurveFlag):
        return [(flag.xi1, unit(2))]
    return [(flag.section_for_step(i), unit(i)) for i in range(n, 1, -1)]
