"""
Vertex-representation rational polytopes.

Hulls are built exactly: a monotone chain in the plane, exhaustive facet
search in dimensions 3 and 4, and redundancy pruning by convex membership
for lower-dimensional point sets sitting in a larger ambient space.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .linalg import QMatrix, QVector, affine_rank, determinant, in_convex_hull, nullspace, rank
from .utils import ContractViolation, PolytopeDict, RationalLike, parse_rational

logger = logging.getLogger(__name__)

MAX_AMBIENT_DIM = 4


@dataclass(frozen=True)
class Facet:
    """
    A facet `normal`·x <= `offset` of a full-dimensional polytope.

    The normal is a primitive integer vector. `vertex_ids` index the owning
    polytope's vertex tuple.
    """
    normal: QVector
    offset: Fraction
    vertex_ids: FrozenSet[int]

    def holds(self, point: QVector, factor: RationalLike = 1) -> bool:
        """Whether the point satisfies the inequality of `factor` times this facet."""
        return self.normal.dot(point) <= self.offset * parse_rational(factor)


def _primitive(normal: QVector) -> QVector:
    denominator = 1
    for c in normal:
        denominator = denominator * c.denominator // math.gcd(denominator, c.denominator)
    ints = [int(c * denominator) for c in normal]
    g = 0
    for value in ints:
        g = math.gcd(g, value)
    return QVector(tuple(Fraction(v, g) for v in ints))


def _cross(o: QVector, a: QVector, b: QVector) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(points: List[QVector]) -> List[QVector]:
    lower: List[QVector] = []
    for p in points:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[QVector] = []
    for p in reversed(points):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def supporting_facets(points: Sequence[QVector]) -> List[Facet]:
    """
    Exhaustive facet search for a full-dimensional point set.

    Every affinely independent n-subset spans a candidate hyperplane; it is
    kept when all points lie on one side of it.
    """
    dim = points[0].dim
    facets: List[Facet] = []
    seen = set()
    for combo in combinations(range(len(points)), dim):
        base = points[combo[0]]
        diffs = tuple(points[i] - base for i in combo[1:])
        kernel = nullspace(QMatrix(diffs, dim))
        if len(kernel) != 1:
            continue
        normal = _primitive(kernel[0])
        offset = normal.dot(base)
        values = [normal.dot(p) for p in points]
        if all(v <= offset for v in values):
            pass
        elif all(v >= offset for v in values):
            normal, offset = -normal, -offset
        else:
            continue
        on_plane = frozenset(i for i, p in enumerate(points) if normal.dot(p) == offset)
        if on_plane in seen:
            continue
        seen.add(on_plane)
        facets.append(Facet(normal=normal, offset=offset, vertex_ids=on_plane))
    return facets


def _vertices_from_facets(points: List[QVector]) -> List[QVector]:
    dim = points[0].dim
    facets = supporting_facets(points)
    vertices = []
    for i, p in enumerate(points):
        normals = tuple(f.normal for f in facets if i in f.vertex_ids)
        if len(normals) >= dim and affine_rank((QVector.zero(dim),) + normals) == dim:
            vertices.append(p)
    return vertices


def _prune_redundant(points: List[QVector]) -> List[QVector]:
    kept = list(points)
    for p in points:
        others = [q for q in kept if q != p]
        if others and in_convex_hull(p, others).inside:
            kept = others
    return kept


def _check_points(points: Sequence[QVector]) -> int:
    if not points:
        raise ContractViolation("Convex hull of an empty point set")
    dim = points[0].dim
    for p in points:
        if p.dim != dim:
            raise ContractViolation(f"Point of dimension {p.dim} in a set of dimension {dim}")
    if dim > MAX_AMBIENT_DIM:
        raise ContractViolation(f"Ambient dimension {dim} exceeds the supported maximum {MAX_AMBIENT_DIM}")
    return dim


@dataclass(frozen=True)
class VPolytope:
    """
    A rational polytope given by its vertices.

    Attributes:
        vertices (Tuple[QVector, ...]): True vertices, sorted lexicographically
        ambient_dim (int): Dimension of the surrounding space
    """
    vertices: Tuple[QVector, ...]
    ambient_dim: int

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ContractViolation("A polytope needs at least one vertex")
        for v in self.vertices:
            if v.dim != self.ambient_dim:
                raise ContractViolation(f"Vertex {v} outside ambient dimension {self.ambient_dim}")
        if list(self.vertices) != sorted(set(self.vertices)):
            raise ContractViolation("Vertices must be distinct and sorted; build polytopes with convex_hull")

    @cached_property
    def dimension(self) -> int:
        """Dimension of the affine hull."""
        return affine_rank(self.vertices)

    def is_full_dimensional(self) -> bool:
        return self.dimension == self.ambient_dim

    @cached_property
    def facets(self) -> Tuple[Facet, ...]:
        if not self.is_full_dimensional():
            raise ContractViolation("Facets are only computed for full-dimensional polytopes")
        return tuple(supporting_facets(self.vertices))

    def contains_point(self, point: QVector) -> bool:
        if point.dim != self.ambient_dim:
            raise ContractViolation(f"Point of dimension {point.dim}, polytope of dimension {self.ambient_dim}")
        return in_convex_hull(point, self.vertices).inside

    def volume(self) -> Fraction:
        return volume(self)

    def scale(self, factor: RationalLike) -> "VPolytope":
        return scale(self, factor)

    def contains(self, other: "VPolytope") -> bool:
        return contains(self, other)

    def equals(self, other: "VPolytope") -> bool:
        return equals(self, other)

    def max_coordinate(self, index: int) -> Fraction:
        return max(v[index] for v in self.vertices)

    def to_dict(self) -> PolytopeDict:
        return {
            "dim": self.ambient_dim,
            "vertices": [v.to_strings() for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VPolytope":
        try:
            dim = int(data["dim"])
            points = [QVector.from_strings(v) for v in data["vertices"]]
        except (KeyError, TypeError) as e:
            raise ContractViolation(f"Malformed polytope document: {e}") from e
        hull = convex_hull(points)
        if hull.ambient_dim != dim:
            raise ContractViolation(f"Declared dimension {dim} does not match vertices of dimension {hull.ambient_dim}")
        return hull

    def __str__(self) -> str:
        return "conv{" + ", ".join(str(v) for v in self.vertices) + "}"


def convex_hull(points: Iterable[QVector]) -> VPolytope:
    """
    Minimal vertex set of the convex hull of a point set.

    Args:
        points: Points of a common dimension (at most 4)

    Returns:
        VPolytope: The hull, vertices sorted lexicographically

    Raises:
        ContractViolation: If the set is empty, mixes dimensions or is too high-dimensional
    """
    points = list(points)
    dim = _check_points(points)
    unique = sorted(set(points))
    if len(unique) == 1:
        return VPolytope(tuple(unique), dim)
    hull_dim = affine_rank(unique)
    if hull_dim == 1:
        # Collinear points sorted lexicographically are ordered along the line.
        vertices = [unique[0], unique[-1]]
    elif hull_dim == dim == 2:
        vertices = _monotone_chain(unique)
    elif hull_dim == dim:
        vertices = _vertices_from_facets(unique)
    else:
        vertices = _prune_redundant(unique)
    logger.debug(f"Hull of {len(unique)} distinct points has {len(vertices)} vertices")
    return VPolytope(tuple(sorted(vertices)), dim)


def is_edge(polytope: VPolytope, i: int, j: int) -> bool:
    """Whether vertices i and j of a full-dimensional polytope span a one-dimensional face."""
    if i == j:
        return False
    n = polytope.ambient_dim
    normals = tuple(f.normal for f in polytope.facets if i in f.vertex_ids and j in f.vertex_ids)
    return rank(QMatrix(normals, n)) == n - 1


def _triangulate(face: FrozenSet[int], dim: int, facet_sets: Sequence[FrozenSet[int]],
                 vertices: Sequence[QVector]) -> List[Tuple[int, ...]]:
    if dim == 0:
        return [tuple(face)]
    base = min(face)
    subfaces = set()
    for facet in facet_sets:
        part = face & facet
        if part != face and len(part) >= dim and affine_rank([vertices[i] for i in part]) == dim - 1:
            subfaces.add(part)
    simplices = []
    for part in sorted(subfaces, key=sorted):
        if base in part:
            continue
        for simplex in _triangulate(part, dim - 1, facet_sets, vertices):
            simplices.append((base,) + simplex)
    return simplices


def triangulate(polytope: VPolytope) -> List[Tuple[int, ...]]:
    """
    Pulling triangulation from the smallest vertex of every face.

    Returns:
        List[Tuple[int, ...]]: Simplices as tuples of vertex indices
    """
    if not polytope.is_full_dimensional():
        raise ContractViolation("Only full-dimensional polytopes are triangulated")
    facet_sets = [f.vertex_ids for f in polytope.facets]
    return _triangulate(frozenset(range(len(polytope.vertices))), polytope.ambient_dim,
                        facet_sets, polytope.vertices)


def volume(polytope: VPolytope) -> Fraction:
    """Exact Euclidean volume; zero for polytopes that are not full-dimensional."""
    n = polytope.ambient_dim
    if not polytope.is_full_dimensional():
        return Fraction(0)
    total = Fraction(0)
    for simplex in triangulate(polytope):
        base = polytope.vertices[simplex[0]]
        edges = tuple(polytope.vertices[i] - base for i in simplex[1:])
        total += abs(determinant(QMatrix(edges, n)))
    return total / math.factorial(n)


def scale(polytope: VPolytope, factor: RationalLike) -> VPolytope:
    """
    Dilate a polytope about the origin.

    Raises:
        ContractViolation: If the factor is negative
    """
    factor = parse_rational(factor)
    if factor < 0:
        raise ContractViolation(f"Scaling factor must be nonnegative, got {factor}")
    if factor == 0:
        return VPolytope((QVector.zero(polytope.ambient_dim),), polytope.ambient_dim)
    return VPolytope(tuple(sorted(v.scaled(factor) for v in polytope.vertices)), polytope.ambient_dim)


def _same_dim(p: VPolytope, q: VPolytope) -> None:
    if p.ambient_dim != q.ambient_dim:
        raise ContractViolation(f"Ambient dimension mismatch: {p.ambient_dim} vs {q.ambient_dim}")


def equals(p: VPolytope, q: VPolytope) -> bool:
    """Exact polytope equality via canonical vertex lists."""
    _same_dim(p, q)
    return p.vertices == q.vertices


def contains(p: VPolytope, q: VPolytope) -> bool:
    """Whether q ⊆ p, checked vertex by vertex."""
    _same_dim(p, q)
    return all(in_convex_hull(v, p.vertices).inside for v in q.vertices)


def bounding_box(polytope: VPolytope) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    lows = tuple(min(v[i] for v in polytope.vertices) for i in range(polytope.ambient_dim))
    highs = tuple(max(v[i] for v in polytope.vertices) for i in range(polytope.ambient_dim))
    return lows, highs
