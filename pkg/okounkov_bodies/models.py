"""
Graded section-ring models: projective space with O(d) and toric varieties
given by lattice polytopes.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Sequence, Tuple, Union

from .linalg import QMatrix, QVector
from .polyring import MultiPoly, binary_coefficients, monomials_of_degree, pullback
from .polytope import VPolytope, bounding_box, convex_hull, scale
from .utils import ConfigError, ContractViolation

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]


@dataclass(frozen=True)
class SectionBasis:
    """
    A basis of H^0(X, L^k).

    Attributes:
        level (int): The level k
        elements (tuple): Monomials (projective) or lattice points (toric), in lexicographic order
        sections (Tuple[MultiPoly, ...]): The elements as polynomials
    """
    level: int
    elements: tuple
    sections: Tuple[MultiPoly, ...]

    def __len__(self) -> int:
        return len(self.sections)


def _check_level(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ContractViolation(f"Levels start at 1, got {k!r}")


@dataclass(frozen=True)
class ProjectiveModel:
    """
    P^n with the bundle O(d); level-k sections are forms of degree d·k.
    """
    n: int
    d: int

    kind = "projective"

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise ContractViolation(f"Projective model needs n >= 1 and d >= 1, got n={self.n}, d={self.d}")

    @property
    def dimension(self) -> int:
        return self.n

    @property
    def num_vars(self) -> int:
        return self.n + 1

    def basis_of_level(self, k: int) -> SectionBasis:
        _check_level(k)
        exponents = tuple(monomials_of_degree(self.num_vars, self.d * k))
        return SectionBasis(k, tuple(MultiPoly.monomial(e) for e in exponents),
                            tuple(MultiPoly.monomial(e) for e in exponents))

    def hilbert_dim(self, k: int) -> int:
        _check_level(k)
        return math.comb(self.n + self.d * k, self.n)

    def in_level(self, section: MultiPoly, k: int) -> bool:
        return (section.num_vars == self.num_vars
                and not section.is_zero()
                and section.homogeneous_degree() == self.d * k)

    def reindexed(self, m: int) -> "ProjectiveModel":
        """The model of L^m."""
        return ProjectiveModel(self.n, self.d * m)

    def to_dict(self) -> Dict[str, Any]:
        return {"type": self.kind, "n": self.n, "d": self.d}

    def __str__(self) -> str:
        return f"P^{self.n} with O({self.d})"


@dataclass(frozen=True)
class ToricModel:
    """
    The toric variety of a full-dimensional lattice polytope P.

    Level-k sections are spanned by the lattice points of k·P. A section is
    stored as a polynomial in n variables whose exponent vectors are those
    lattice points shifted by k times the componentwise minimum of P.
    """
    polytope: VPolytope

    kind = "toric"

    def __post_init__(self) -> None:
        for v in self.polytope.vertices:
            if any(c.denominator != 1 for c in v):
                raise ContractViolation(f"Toric polytope vertex {v} is not a lattice point")
        if not self.polytope.is_full_dimensional():
            raise ContractViolation("Toric polytope must be full-dimensional")
        if self.polytope.ambient_dim > 3:
            raise ContractViolation("Toric models are supported up to dimension 3")

    @classmethod
    def from_vertices(cls, vertices: Sequence[Sequence[int]]) -> "ToricModel":
        return cls(convex_hull([QVector(tuple(v)) for v in vertices]))

    @property
    def dimension(self) -> int:
        return self.polytope.ambient_dim

    @property
    def num_vars(self) -> int:
        return self.dimension

    @cached_property
    def origin(self) -> LatticePoint:
        lows, _ = bounding_box(self.polytope)
        return tuple(int(c) for c in lows)

    def lattice_points(self, k: int) -> List[LatticePoint]:
        """Lattice points of k·P by bounding-box enumeration and facet tests."""
        _check_level(k)
        lows, highs = bounding_box(self.polytope)
        ranges = [range(int(lo) * k, int(hi) * k + 1) for lo, hi in zip(lows, highs)]
        facets = self.polytope.facets
        points = []
        for candidate in itertools.product(*ranges):
            q = QVector(tuple(candidate))
            if all(f.holds(q, k) for f in facets):
                points.append(tuple(candidate))
        return points

    def contains_point(self, point: Sequence[int], k: int) -> bool:
        q = QVector(tuple(point))
        return all(f.holds(q, k) for f in self.polytope.facets)

    def section_of_point(self, point: Sequence[int], k: int, coefficient=1) -> MultiPoly:
        return MultiPoly.monomial(tuple(p - k * o for p, o in zip(point, self.origin)), coefficient)

    def point_of_exponent(self, exponent: Sequence[int], k: int) -> LatticePoint:
        return tuple(e + k * o for e, o in zip(exponent, self.origin))

    def basis_of_level(self, k: int) -> SectionBasis:
        points = tuple(self.lattice_points(k))
        return SectionBasis(k, points, tuple(self.section_of_point(p, k) for p in points))

    def hilbert_dim(self, k: int) -> int:
        return len(self.lattice_points(k))

    def in_level(self, section: MultiPoly, k: int) -> bool:
        if section.num_vars != self.num_vars or section.is_zero():
            return False
        return all(self.contains_point(self.point_of_exponent(e, k), k) for e in section.exponents())

    def reindexed(self, m: int) -> "ToricModel":
        return ToricModel(scale(self.polytope, m))

    def to_dict(self) -> Dict[str, Any]:
        return {"type": self.kind, "vertices": [[int(c) for c in v] for v in self.polytope.vertices]}

    def __str__(self) -> str:
        return f"toric variety of {self.polytope}"


Model = Union[ProjectiveModel, ToricModel]


def model_from_config(data: Dict[str, Any]) -> Model:
    """
    Build a model from {type: "projective", n, d} or {type: "toric", vertices}.

    Raises:
        ConfigError: If the table is malformed or violates model invariants
    """
    if not isinstance(data, dict):
        raise ConfigError("Model config must be a table")
    kind = data.get("type")
    try:
        if kind == "projective":
            return ProjectiveModel(int(data["n"]), int(data["d"]))
        if kind == "toric":
            vertices = data["vertices"]
            if not vertices or any(not isinstance(c, int) for v in vertices for c in v):
                raise ConfigError("Toric vertices must be nonempty lists of integers")
            return ToricModel.from_vertices(vertices)
    except KeyError as e:
        raise ConfigError(f"Model config is missing key {e}") from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid model config: {e}") from e
    raise ConfigError(f"Unknown model type {kind!r}; expected 'projective' or 'toric'")


def basis_of_level(model: Model, k: int) -> SectionBasis:
    return model.basis_of_level(k)


def hilbert_dim(model: Model, k: int) -> int:
    """dim H^0(X, L^k)."""
    return model.hilbert_dim(k)


def _edge_length(model: ToricModel, vertex: Sequence[int], edge: Sequence[int]) -> int:
    best = 0
    for v in model.polytope.vertices:
        diff = [int(c) - a for c, a in zip(v, vertex)]
        nonzero = [(d, w) for d, w in zip(diff, edge) if w != 0]
        if not nonzero or any(d != 0 for d, w in zip(diff, edge) if w == 0):
            continue
        ratio = Fraction(nonzero[0][0], nonzero[0][1])
        if ratio > 0 and ratio.denominator == 1 and all(Fraction(d, w) == ratio for d, w in nonzero):
            best = max(best, int(ratio))
    return best


def restriction_degree(model: Model, flag) -> int:
    """
    b = deg L|_{X_1}.

    Raises:
        ConfigError: If the flag does not belong to the model
    """
    variant = getattr(flag, "variant", None)
    if variant == "coordinate" and isinstance(model, ProjectiveModel):
        if len(flag.order) != model.num_vars:
            raise ConfigError(f"Coordinate flag of length {len(flag.order)} on {model}")
        return model.d
    if variant == "curve" and isinstance(model, ProjectiveModel):
        if flag.param.ambient_vars != model.num_vars:
            raise ConfigError(f"Curve in P^{flag.param.ambient_vars - 1} used on {model}")
        b = model.d * flag.param.degree
        degrees = {pullback(s, flag.param).homogeneous_degree()
                   for s in model.basis_of_level(1).sections}
        degrees.discard(None)
        if degrees != {b}:
            raise ConfigError(f"Pullbacks of level-1 sections have degrees {sorted(degrees)}, expected {b}")
        return b
    if variant == "toric_vertex" and isinstance(model, ToricModel):
        length = _edge_length(model, flag.vertex, flag.edges[0])
        if length < 1:
            raise ConfigError(f"First edge direction {flag.edges[0]} does not follow an edge from {flag.vertex}")
        return length
    raise ConfigError(f"Flag variant {variant!r} does not apply to {model}")


def restriction_matrix(model: Model, flag, j: int) -> QMatrix:
    """
    Matrix of R_j : H^0(X, L^j) -> H^0(X_1, L^j|X_1) for a curve flag.

    Rows follow basis_of_level(j); columns are t^0, ..., t^{b·j} on the chart u = 1.
    """
    if getattr(flag, "variant", None) != "curve" or not isinstance(model, ProjectiveModel):
        raise ContractViolation("Restriction matrices are only defined for curve flags on projective models")
    _check_level(j)
    b = restriction_degree(model, flag)
    width = b * j
    rows = [binary_coefficients(pullback(s, flag.param), width) for s in model.basis_of_level(j).sections]
    return QMatrix.from_rows(rows, width + 1)
