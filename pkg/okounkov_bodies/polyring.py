"""
Multivariate polynomials over Q and rational curve parametrizations.

Sections of line bundles are modelled as polynomials: homogeneous forms in
n+1 variables for projective space, binary forms in (u, t) on a flag curve.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .linalg import QMatrix
from .utils import ContractViolation, RationalLike, format_rational, parse_rational

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

PARAMETER_NAMES = ("u", "t")

_COEFFICIENT = r"(?P<coef>\d+(?:/\d+)?)?"


def _division_key(exponent: Exponent) -> Exponent:
    # Lex order with the last variable most significant: the polynomial is
    # read as univariate in its last variable with polynomial coefficients.
    return tuple(reversed(exponent))


class MultiPoly:
    """
    A polynomial with rational coefficients in a fixed number of variables.

    Instances are treated as immutable; every operation returns a new value.

    Attributes:
        num_vars (int): Number of variables
    """

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Exponent, RationalLike]] = None) -> None:
        """
        Initialize a polynomial.

        Args:
            num_vars: Number of variables, at least one
            terms: Mapping from exponent vectors to coefficients; zeros are dropped
        """
        if num_vars < 1:
            raise ContractViolation(f"A polynomial needs at least one variable, got {num_vars}")
        cleaned: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(a) for a in exponent)
            if len(exponent) != num_vars or any(a < 0 for a in exponent):
                raise ContractViolation(f"Invalid exponent {exponent} for {num_vars} variables")
            coefficient = parse_rational(coefficient)
            if coefficient != 0:
                cleaned[exponent] = cleaned.get(exponent, Fraction(0)) + coefficient
                if cleaned[exponent] == 0:
                    del cleaned[exponent]
        self.num_vars = num_vars
        self._terms = cleaned

    @classmethod
    def _raw(cls, num_vars: int, terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.num_vars = num_vars
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, value: RationalLike = 1) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: RationalLike = 1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): coefficient})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "MultiPoly":
        return cls.monomial(tuple(1 if i == index else 0 for i in range(num_vars)))

    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in canonical order: exponent vectors descending lexicographically."""
        return sorted(self._terms.items(), reverse=True)

    def exponents(self) -> List[Exponent]:
        return [e for e, _ in self.terms()]

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of all terms, or None if the polynomial is zero or mixed."""
        degrees = {sum(e) for e in self._terms}
        if len(degrees) != 1:
            return None
        return degrees.pop()

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def _check(self, other: "MultiPoly") -> None:
        if self.num_vars != other.num_vars:
            raise ContractViolation(f"Variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.num_vars, parse_rational(other))

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            value = terms.get(e, Fraction(0)) + c
            if value:
                terms[e] = value
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            factor = parse_rational(other)
            if factor == 0:
                return MultiPoly.zero(self.num_vars)
            return MultiPoly._raw(self.num_vars, {e: c * factor for e, c in self._terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "MultiPoly":
        if power < 0:
            raise ContractViolation("Negative powers are not polynomials")
        result = MultiPoly.constant(self.num_vars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self._terms.items())))

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        """Largest term for the division order (last variable most significant)."""
        if self.is_zero():
            raise ContractViolation("The zero polynomial has no leading term")
        exponent = max(self._terms, key=_division_key)
        return exponent, self._terms[exponent]

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.num_vars:
            raise ContractViolation(f"Point has {len(point)} coordinates, polynomial has {self.num_vars} variables")
        values = [parse_rational(x) for x in point]
        total = Fraction(0)
        for exponent, coefficient in self._terms.items():
            term = coefficient
            for x, a in zip(values, exponent):
                if a:
                    term *= x ** a
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by images[i]."""
        if len(images) != self.num_vars:
            raise ContractViolation(f"{len(images)} images for {self.num_vars} variables")
        target_vars = images[0].num_vars
        for image in images:
            if image.num_vars != target_vars:
                raise ContractViolation("Substitution images must share their variables")
        powers: List[Dict[int, MultiPoly]] = [{0: MultiPoly.constant(target_vars)} for _ in images]

        def power(i: int, a: int) -> MultiPoly:
            cache = powers[i]
            if a not in cache:
                cache[a] = power(i, a - 1) * images[i]
            return cache[a]

        result = MultiPoly.zero(target_vars)
        for exponent, coefficient in self.terms():
            term = MultiPoly.constant(target_vars, coefficient)
            for i, a in enumerate(exponent):
                if a:
                    term = term * power(i, a)
            result = result + term
        return result

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Render as "c z0^a0 z1^a1 ..." terms in canonical order."""
        names = list(names) if names is not None else [f"z{i}" for i in range(self.num_vars)]
        if self.is_zero():
            return "0"
        pieces = []
        for exponent, coefficient in self.terms():
            factors = [
                name if a == 1 else f"{name}^{a}"
                for name, a in zip(names, exponent) if a
            ]
            magnitude = abs(coefficient)
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = " ".join(factors)
            else:
                body = " ".join([format_rational(magnitude)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if coefficient < 0 else body)
            else:
                pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {self.format()!r})"


def multiply(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact product of two polynomials in the same variables."""
    f._check(g)
    terms: Dict[Exponent, Fraction] = {}
    for e1, c1 in f._terms.items():
        for e2, c2 in g._terms.items():
            exponent = tuple(a + b for a, b in zip(e1, e2))
            value = terms.get(exponent, Fraction(0)) + c1 * c2
            if value:
                terms[exponent] = value
            else:
                terms.pop(exponent, None)
    return MultiPoly._raw(f.num_vars, terms)


def exact_divide(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """
    Exact quotient f / g in the polynomial ring.

    A single polynomial is a Groebner basis of the ideal it generates, so
    leading-term reduction reaches zero exactly when g divides f; the loop
    stops at the first leading term that g cannot cancel.

    Args:
        f: The dividend
        g: The divisor, nonzero

    Returns:
        Optional[MultiPoly]: q with f = g·q, or None when g does not divide f

    Raises:
        ContractViolation: If g is zero or the variable counts differ
    """
    f._check(g)
    if g.is_zero():
        raise ContractViolation("Division by the zero polynomial")
    lead_exponent, lead_coefficient = g.leading_term()
    remainder = dict(f._terms)
    quotient: Dict[Exponent, Fraction] = {}
    while remainder:
        exponent = max(remainder, key=_division_key)
        shift = tuple(a - b for a, b in zip(exponent, lead_exponent))
        if any(a < 0 for a in shift):
            return None
        factor = remainder[exponent] / lead_coefficient
        quotient[shift] = factor
        for e, c in g._terms.items():
            target = tuple(a + b for a, b in zip(e, shift))
            value = remainder.get(target, Fraction(0)) - factor * c
            if value:
                remainder[target] = value
            else:
                remainder.pop(target, None)
    return MultiPoly._raw(f.num_vars, quotient)


def max_power_dividing(f: MultiPoly, g: MultiPoly) -> Tuple[int, MultiPoly]:
    """
    Largest m with g^m | f, together with f / g^m.

    Raises:
        ContractViolation: If f is zero or g is constant
    """
    if f.is_zero():
        raise ContractViolation("Vanishing order of the zero section is undefined")
    if g.is_zero() or g.is_constant():
        raise ContractViolation("The divisor must be a nonconstant polynomial")
    order = 0
    residual = f
    while True:
        quotient = exact_divide(residual, g)
        if quotient is None:
            return order, residual
        order += 1
        residual = quotient


def quadric_matrix(form: MultiPoly) -> QMatrix:
    """Symmetric matrix of a quadratic form (off-diagonal entries halved)."""
    if form.homogeneous_degree() != 2:
        raise ContractViolation(f"Not a quadratic form: {form}")
    n = form.num_vars
    entries = [[Fraction(0)] * n for _ in range(n)]
    for exponent, coefficient in form.terms():
        support = [i for i, a in enumerate(exponent) if a]
        if len(support) == 1:
            i = support[0]
            entries[i][i] += coefficient
        else:
            i, j = support
            entries[i][j] += coefficient / 2
            entries[j][i] += coefficient / 2
    return QMatrix.from_rows(entries)


def _term_pattern(names: Sequence[str]) -> Tuple["re.Pattern", "re.Pattern"]:
    alternation = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True)) if names else r"z\d+"
    factor = rf"(?P<name>{alternation})(?:\^(?P<power>\d+))?"
    term = re.compile(rf"^{_COEFFICIENT}\*?(?P<mons>(?:(?:{alternation})(?:\^\d+)?\*?)*)$")
    return term, re.compile(factor)


def parse_poly(text: str, num_vars: Optional[int] = None, names: Optional[Sequence[str]] = None) -> MultiPoly:
    """
    Parse the text format "c z0^a0 z1^a1 ... + ...".

    Whitespace is ignored; `*` between factors is optional. Without `names`,
    variables are z0, z1, ... and `num_vars` defaults to the largest index seen
    plus one.

    Raises:
        ContractViolation: If the text is not a polynomial in the given variables
    """
    compact = "".join(text.split())
    if not compact:
        raise ContractViolation("Empty polynomial text")
    pieces = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(pieces) != compact:
        raise ContractViolation(f"Malformed polynomial: {text!r}")
    term_re, factor_re = _term_pattern(list(names) if names else [])
    parsed: List[Tuple[Fraction, Dict[str, int]]] = []
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        match = term_re.match(body)
        if not match or (match.group("coef") is None and not match.group("mons")):
            raise ContractViolation(f"Malformed term {piece!r} in {text!r}")
        coefficient = parse_rational(match.group("coef")) if match.group("coef") else Fraction(1)
        powers: Dict[str, int] = {}
        for factor in factor_re.finditer(match.group("mons") or ""):
            name = factor.group("name")
            powers[name] = powers.get(name, 0) + int(factor.group("power") or 1)
        parsed.append((sign * coefficient, powers))

    if names:
        index = {name: i for i, name in enumerate(names)}
        count = len(names)
    else:
        seen = [int(name[1:]) for _, powers in parsed for name in powers]
        count = num_vars if num_vars is not None else max(seen, default=0) + 1
        if seen and max(seen) >= count:
            raise ContractViolation(f"Variable z{max(seen)} out of range for {count} variables")
        index = {f"z{i}": i for i in range(count)}
    terms: Dict[Exponent, Fraction] = {}
    for coefficient, powers in parsed:
        exponent = [0] * count
        for name, power in powers.items():
            exponent[index[name]] += power
        key = tuple(exponent)
        terms[key] = terms.get(key, Fraction(0)) + coefficient
    return MultiPoly(count, terms)


@dataclass(frozen=True)
class CurveParam:
    """
    A rational curve [φ_0(u,t) : ... : φ_n(u,t)] in projective space.

    All components are binary forms of the common degree `degree`. The flag
    point is the image of the parameter origin t = 0, u = 1.
    """
    components: Tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        components = tuple(self.components)
        if len(components) < 2:
            raise ContractViolation("A parametrization needs at least two components")
        degrees = set()
        for component in components:
            if component.num_vars != 2:
                raise ContractViolation(f"Component {component} is not a binary form in (u, t)")
            if not component.is_zero():
                degree = component.homogeneous_degree()
                if degree is None:
                    raise ContractViolation(f"Component {component.format(PARAMETER_NAMES)} is not homogeneous")
                degrees.add(degree)
        if len(degrees) != 1:
            raise ContractViolation("Parametrization components must share one positive degree")
        if degrees.pop() < 1:
            raise ContractViolation("Parametrization components must be nonconstant")
        object.__setattr__(self, "components", components)

    @property
    def degree(self) -> int:
        return next(c.homogeneous_degree() for c in self.components if not c.is_zero())

    @property
    def ambient_vars(self) -> int:
        return len(self.components)

    @classmethod
    def from_strings(cls, texts: Sequence[str]) -> "CurveParam":
        """
        Parse components written in u and t, homogenizing affine input.

        "1", "t", "t^2" becomes u^2, u t, t^2.
        """
        parsed = [parse_poly(text, names=PARAMETER_NAMES) for text in texts]
        degree = max(p.degree() for p in parsed)
        homogenized = []
        for poly in parsed:
            terms = {(a + degree - (a + b), b): c for (a, b), c in poly.terms()}
            homogenized.append(MultiPoly(2, terms))
        return cls(tuple(homogenized))

    def point_at(self, u: RationalLike, t: RationalLike) -> Tuple[Fraction, ...]:
        return tuple(c.evaluate((u, t)) for c in self.components)

    def base_point(self) -> Tuple[Fraction, ...]:
        return self.point_at(1, 0)

    def sample_parameters(self) -> List[Tuple[int, int]]:
        """(u, t) sample values: t = 0, ..., 2e on the chart u = 1, plus the point at infinity."""
        return [(1, t) for t in range(2 * self.degree + 1)] + [(0, 1)]

    def has_no_common_zero(self) -> bool:
        return all(any(x != 0 for x in self.point_at(u, t)) for u, t in self.sample_parameters())

    def to_strings(self) -> List[str]:
        return [c.format(PARAMETER_NAMES) for c in self.components]


def pullback(section: MultiPoly, param: CurveParam) -> MultiPoly:
    """
    Restrict a form to the curve by substituting the parametrization.

    The result is a binary form of degree deg(section)·e, or zero when the
    section vanishes on the curve.
    """
    if section.num_vars != param.ambient_vars:
        raise ContractViolation(
            f"Section in {section.num_vars} variables, parametrization has {param.ambient_vars} components"
        )
    return section.substitute(param.components)


def order_at_base_point(form: MultiPoly) -> int:
    """
    Order of vanishing of a binary form at t = 0.

    Raises:
        ContractViolation: If the form is zero
    """
    if form.num_vars != 2:
        raise ContractViolation(f"Expected a binary form in (u, t), got {form.num_vars} variables")
    if form.is_zero():
        raise ContractViolation("Order of vanishing of the zero form is undefined")
    return min(b for (_, b) in form.exponents())


def lowest_coefficient(form: MultiPoly) -> Fraction:
    """Coefficient of the lowest power of t."""
    order = order_at_base_point(form)
    return sum((c for (_, b), c in form.terms() if b == order), Fraction(0))


def binary_coefficients(form: MultiPoly, degree: int) -> List[Fraction]:
    """Coefficients of t^0, ..., t^degree on the chart u = 1 of a binary form of that degree."""
    if not form.is_zero() and form.homogeneous_degree() != degree:
        raise ContractViolation(f"Binary form of degree {form.homogeneous_degree()}, expected {degree}")
    return [form.coefficient((degree - i, i)) for i in range(degree + 1)]


def monomials_of_degree(num_vars: int, degree: int) -> List[Exponent]:
    """All exponent vectors of the given total degree, descending lexicographically."""
    if num_vars == 1:
        return [(degree,)]
    result: List[Exponent] = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - first):
            result.append((first,) + rest)
    return result