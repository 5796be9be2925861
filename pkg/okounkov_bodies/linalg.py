"""
Exact rational linear algebra.

Scalars are `fractions.Fraction`; vectors and matrices are immutable value
objects. Rank, elimination and determinants go through `sympy.Matrix`
over the Rationals; the convex membership test is a rational simplex.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import sympy as sp

from .utils import ContractViolation, RationalLike, format_rational, parse_rational

logger = logging.getLogger(__name__)

Rational = Fraction


def _coerce(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return parse_rational(value)


@dataclass(frozen=True, order=True)
class QVector:
    """
    A point of Q^n.

    Attributes:
        coords (Tuple[Fraction, ...]): The coordinates, at least one
    """
    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(_coerce(c) for c in self.coords)
        if not coords:
            raise ContractViolation("Vectors of dimension 0 are not supported")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: RationalLike) -> "QVector":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, dim: int) -> "QVector":
        return cls((Fraction(0),) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "QVector":
        """The standard basis vector e_{index+1} (0-based index)."""
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def _check(self, other: "QVector") -> None:
        if self.dim != other.dim:
            raise ContractViolation(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self.coords))

    def scaled(self, factor: RationalLike) -> "QVector":
        factor = _coerce(factor)
        return QVector(tuple(factor * a for a in self.coords))

    def dot(self, other: "QVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def to_strings(self) -> List[str]:
        return [format_rational(c) for c in self.coords]

    @classmethod
    def from_strings(cls, values: Sequence[RationalLike]) -> "QVector":
        return cls(tuple(parse_rational(v) for v in values))

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class QMatrix:
    """
    A dense rational matrix stored by rows.

    Attributes:
        rows (Tuple[QVector, ...]): The rows, all of length `cols`
        cols (int): Column count, kept explicitly so empty matrices have a shape
    """
    rows: Tuple[QVector, ...]
    cols: int

    def __post_init__(self) -> None:
        rows = tuple(r if isinstance(r, QVector) else QVector(tuple(r)) for r in self.rows)
        for row in rows:
            if row.dim != self.cols:
                raise ContractViolation(
                    f"Row of length {row.dim} in a matrix with {self.cols} columns"
                )
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[RationalLike]], cols: Optional[int] = None) -> "QMatrix":
        rows = [QVector(tuple(r)) for r in rows]
        if cols is None:
            if not rows:
                raise ContractViolation("Column count required for a matrix without rows")
            cols = rows[0].dim
        return cls(tuple(rows), cols)

    @classmethod
    def identity(cls, size: int) -> "QMatrix":
        return cls(tuple(QVector.unit(size, i) for i in range(size)), size)

    @classmethod
    def zeros(cls, row_count: int, col_count: int) -> "QMatrix":
        return cls(tuple(QVector.zero(col_count) for _ in range(row_count)), col_count)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.row_count, self.cols

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def transpose(self) -> "QMatrix":
        if not self.rows:
            raise ContractViolation("Cannot transpose a matrix without rows")
        return QMatrix(
            tuple(QVector(tuple(row[j] for row in self.rows)) for j in range(self.cols)),
            self.row_count,
        )

    def apply(self, x: QVector) -> QVector:
        """Return A·x."""
        if x.dim != self.cols:
            raise ContractViolation(f"Matrix has {self.cols} columns, vector has {x.dim} entries")
        return QVector(tuple(row.dot(x) for row in self.rows))

    def as_lists(self) -> List[List[Fraction]]:
        return [list(row.coords) for row in self.rows]


def to_sympy(a: QMatrix) -> sp.Matrix:
    """The same matrix as a `sympy.Matrix` of Rationals."""
    return sp.Matrix(a.row_count, a.cols,
                     [sp.Rational(x.numerator, x.denominator) for row in a.rows for x in row])


def _from_sympy(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def rank(a: QMatrix) -> int:
    """Exact rank over the rationals."""
    return int(to_sympy(a).rank())


def gauss_solve(a: QMatrix, b: QVector) -> Optional[QVector]:
    """
    Solve A·x = b exactly.

    Free variables are set to zero, so the answer is deterministic.

    Args:
        a: The coefficient matrix
        b: The right-hand side, one entry per row of `a`

    Returns:
        Optional[QVector]: A solution, or None when the system is inconsistent

    Raises:
        ContractViolation: If the shapes do not match
    """
    if b.dim != a.row_count:
        raise ContractViolation(f"Matrix has {a.row_count} rows, right-hand side has {b.dim} entries")
    rhs = sp.Matrix([sp.Rational(x.numerator, x.denominator) for x in b.coords])
    reduced, pivots = to_sympy(a).row_join(rhs).rref()
    if a.cols in pivots:
        return None
    solution = [Fraction(0)] * a.cols
    for r, c in enumerate(pivots):
        solution[c] = _from_sympy(reduced[r, a.cols])
    return QVector(tuple(solution))


def nullspace(a: QMatrix) -> List[QVector]:
    """A basis of {x : A·x = 0}, one vector per free column."""
    return [QVector(tuple(_from_sympy(x) for x in v)) for v in to_sympy(a).nullspace()]


def determinant(a: QMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if a.row_count != a.cols:
        raise ContractViolation(f"Determinant of a non-square {a.shape} matrix")
    return _from_sympy(to_sympy(a).det())


def affine_rank(points: Sequence[QVector]) -> int:
    """Dimension of the affine hull of a nonempty point set."""
    if not points:
        raise ContractViolation("Affine rank of an empty point set")
    base = points[0]
    diffs = [p - base for p in points[1:]]
    if not diffs:
        return 0
    return rank(QMatrix(tuple(diffs), base.dim))


@dataclass(frozen=True)
class HullCertificate:
    """
    Outcome of a convex membership query.

    When `inside` is true, `coefficients` holds one nonnegative weight per
    generator. Otherwise `normal`·x <= `offset` holds for every generator and
    fails for the query point.
    """
    inside: bool
    coefficients: Optional[Tuple[Fraction, ...]] = None
    normal: Optional[QVector] = None
    offset: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.inside

    def verify(self, point: QVector, generators: Sequence[QVector]) -> bool:
        """Re-check the certificate from scratch."""
        if self.inside:
            coefficients = self.coefficients or ()
            if len(coefficients) != len(generators) or any(x < 0 for x in coefficients):
                return False
            if sum(coefficients, Fraction(0)) != 1:
                return False
            combo = QVector.zero(point.dim)
            for x, g in zip(coefficients, generators):
                combo = combo + g.scaled(x)
            return combo == point
        if self.normal is None or self.offset is None:
            return False
        return (all(self.normal.dot(g) <= self.offset for g in generators)
                and self.normal.dot(point) > self.offset)


def in_convex_hull(point: QVector, generators: Sequence[QVector]) -> HullCertificate:
    """
    Decide p ∈ conv(generators) exactly.

    Solves the feasibility problem Σλ_j g_j = p, Σλ_j = 1, λ >= 0 with a
    phase-one simplex over the rationals, pivoting by Bland's rule. When the
    artificial objective stays positive, the simplex multipliers give a
    separating hyperplane.

    Args:
        point: The query point
        generators: Points spanning the hull

    Returns:
        HullCertificate: Convex weights or a separating hyperplane

    Raises:
        ContractViolation: If the generator list is empty or dimensions differ
    """
    if not generators:
        raise ContractViolation("Convex hull of an empty generator list")
    dim = point.dim
    for g in generators:
        if g.dim != dim:
            raise ContractViolation(f"Generator of dimension {g.dim}, expected {dim}")

    m = len(generators)
    r = dim + 1
    signs = []
    table: List[List[Fraction]] = []
    for i in range(r):
        if i < dim:
            row = [g[i] for g in generators]
            rhs = point[i]
        else:
            row = [Fraction(1)] * m
            rhs = Fraction(1)
        sign = -1 if rhs < 0 else 1
        signs.append(sign)
        artificial = [Fraction(1 if k == i else 0) for k in range(r)]
        table.append([sign * v for v in row] + artificial + [sign * rhs])
    basis = [m + i for i in range(r)]
    cost = [Fraction(0)] * m + [Fraction(1)] * r

    iterations = 0
    while True:
        iterations += 1
        entering = None
        for j in range(m + r):
            reduced = cost[j] - sum((cost[basis[i]] * table[i][j] for i in range(r)), Fraction(0))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(r):
            coefficient = table[i][entering]
            if coefficient > 0:
                ratio = table[i][-1] / coefficient
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        # Phase one is bounded below by zero, so some row always qualifies.
        pivot = table[leaving][entering]
        table[leaving] = [v / pivot for v in table[leaving]]
        for i in range(r):
            if i != leaving and table[i][entering] != 0:
                factor = table[i][entering]
                table[i] = [a - factor * b for a, b in zip(table[i], table[leaving])]
        basis[leaving] = entering

    objective = sum((cost[basis[i]] * table[i][-1] for i in range(r)), Fraction(0))
    logger.debug(f"Convex membership settled after {iterations} simplex iterations")
    if objective == 0:
        weights = [Fraction(0)] * m
        for i, var in enumerate(basis):
            if var < m:
                weights[var] = table[i][-1]
        return HullCertificate(inside=True, coefficients=tuple(weights))

    multipliers = [
        sum((cost[basis[i]] * table[i][m + k] for i in range(r)), Fraction(0)) * signs[k]
        for k in range(r)
    ]
    normal = QVector(tuple(multipliers[:dim]))
    return HullCertificate(inside=False, normal=normal, offset=-multipliers[dim])
