"""
The flag valuation and its image on each level of the section ring.

Valuation vectors follow one convention throughout: coordinate i holds the
vanishing order along X_{i-1} ⊂ X_i, and the computation runs from the
divisor step (coordinate n) down to the point step (coordinate 1).
Comparisons therefore use lex order read from coordinate n.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .flags import CoordinateFlag, CurveFlag, FlagSpec, ToricVertexFlag
from .models import Model, ProjectiveModel, ToricModel, restriction_degree
from .polyring import MultiPoly, lowest_coefficient, max_power_dividing, order_at_base_point, pullback
from .utils import ContractViolation, InternalGuardError, lex_key

logger = logging.getLogger(__name__)

Value = Tuple[int, ...]


@dataclass(frozen=True)
class ValuationPoint:
    """An element (k, v(s)) of the semigroup."""
    level: int
    value: Value


@dataclass(frozen=True)
class SemigroupSample:
    """
    The truncation {(k, v(s)) : 1 <= k <= K} of the valuation semigroup.

    Attributes:
        max_level (int): K
        levels (Tuple[Tuple[Value, ...], ...]): levels[k-1] is the sorted image at level k
    """
    max_level: int
    levels: Tuple[Tuple[Value, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.levels[0][0])

    def at_level(self, k: int) -> Tuple[Value, ...]:
        if not 1 <= k <= self.max_level:
            raise ContractViolation(f"Level {k} outside the sample 1..{self.max_level}")
        return self.levels[k - 1]

    def points(self) -> Iterator[ValuationPoint]:
        for k, values in enumerate(self.levels, start=1):
            for value in values:
                yield ValuationPoint(k, value)

    def __contains__(self, point: ValuationPoint) -> bool:
        return 1 <= point.level <= self.max_level and point.value in self.levels[point.level - 1]

    def __len__(self) -> int:
        return sum(len(values) for values in self.levels)

    def truncated(self, K: int) -> "SemigroupSample":
        if not 1 <= K <= self.max_level:
            raise ContractViolation(f"Cannot truncate a sample of level {self.max_level} to {K}")
        return SemigroupSample(K, self.levels[:K])

    def to_dict(self) -> Dict[str, object]:
        return {
            "max_level": self.max_level,
            "levels": {str(k): [list(v) for v in values] for k, values in enumerate(self.levels, start=1)},
        }


def _coordinate_value(flag: CoordinateFlag, exponent: Tuple[int, ...]) -> Value:
    return tuple(exponent[flag.order[i]] for i in range(1, len(flag.order)))


def _toric_value(model: ToricModel, flag: ToricVertexFlag, exponent: Tuple[int, ...], k: int) -> Value:
    coords = flag.edge_coordinates(model.point_of_exponent(exponent, k), k)
    if any(c.denominator != 1 or c < 0 for c in coords):
        raise InternalGuardError(f"Lattice point outside the vertex cone: edge coordinates {coords}")
    return tuple(int(c) for c in coords)


def _check_section(model: Model, section: MultiPoly, k: int) -> None:
    if section.is_zero():
        raise ContractViolation("The valuation of the zero section is undefined")
    if not model.in_level(section, k):
        raise ContractViolation(f"Section {section} is not in the level-{k} space of {model}")


def valuation_with_lead(model: Model, flag: FlagSpec, section: MultiPoly, k: int) -> Tuple[Value, Fraction]:
    """
    The valuation together with the coefficient at the valuation value.

    For curve flags the leading coefficient is the lowest t-coefficient of
    the pulled-back residual; for monomial flags it is the coefficient of the
    monomial selecting the value.
    """
    _check_section(model, section, k)
    if isinstance(flag, CurveFlag):
        if not isinstance(model, ProjectiveModel):
            raise ContractViolation("Curve flags live on projective models")
        divisor_order, residual = max_power_dividing(section, flag.xi1)
        restricted = pullback(residual, flag.param)
        if restricted.is_zero():
            raise InternalGuardError(
                f"Residual {residual} vanishes on X_1 without being divisible by ξ_1; the flag is not admissible"
            )
        return (order_at_base_point(restricted), divisor_order), lowest_coefficient(restricted)
    if isinstance(flag, CoordinateFlag):
        if not isinstance(model, ProjectiveModel):
            raise ContractViolation("Coordinate flags live on projective models")
        candidates = [(_coordinate_value(flag, e), c) for e, c in section.terms()]
    elif isinstance(flag, ToricVertexFlag):
        if not isinstance(model, ToricModel):
            raise ContractViolation("Toric vertex flags live on toric models")
        candidates = [(_toric_value(model, flag, e, k), c) for e, c in section.terms()]
    else:
        raise ContractViolation(f"Not a flag specification: {flag!r}")
    return min(candidates, key=lambda item: lex_key(item[0]))


def valuation(model: Model, flag: FlagSpec, section: MultiPoly, k: int) -> Value:
    """
    v(s) for a nonzero level-k section.

    Raises:
        ContractViolation: If the section is zero or not in the level-k space
    """
    return valuation_with_lead(model, flag, section, k)[0]


def value_bound(model: Model, flag: FlagSpec, k: int) -> int:
    """Componentwise bound on level-k valuation values."""
    if isinstance(flag, CurveFlag):
        return k * restriction_degree(model, flag)
    if isinstance(flag, CoordinateFlag):
        return k * model.d
    coords = [flag.edge_coordinates([int(c) for c in v]) for v in model.polytope.vertices]
    return k * int(max(max(c) for c in coords))


def triangular_basis(model: Model, flag: FlagSpec, k: int) -> Dict[Value, MultiPoly]:
    """
    A basis of the level-k space with pairwise distinct valuation values.

    Each basis element is reduced against the pivots found so far: on a
    value collision the leading coefficients are cancelled, which strictly
    raises the value. Values beyond the level bound mean the valuation is
    broken and raise InternalGuardError.
    """
    bound = value_bound(model, flag, k)
    pivots: Dict[Value, Tuple[MultiPoly, Fraction]] = {}
    eliminations = 0
    for section in model.basis_of_level(k).sections:
        current = section
        while True:
            value, lead = valuation_with_lead(model, flag, current, k)
            if max(value) > bound:
                raise InternalGuardError(f"Valuation {value} exceeds the level-{k} bound {bound}")
            if value not in pivots:
                pivots[value] = (current, lead)
                break
            pivot, pivot_lead = pivots[value]
            current = current - pivot * (lead / pivot_lead)
            eliminations += 1
            if current.is_zero():
                raise InternalGuardError(f"Level-{k} basis collapsed during elimination")
    logger.debug(f"Level {k}: {len(pivots)} values after {eliminations} eliminations")
    return {value: pivots[value][0] for value in sorted(pivots)}


def valuation_image(model: Model, flag: FlagSpec, k: int) -> List[Value]:
    """
    {v(s) : s ∈ H^0(X, L^k) \\ {0}}, sorted lexicographically.

    Its size equals hilbert_dim(model, k).
    """
    image = list(triangular_basis(model, flag, k))
    expected = model.hilbert_dim(k)
    if len(image) != expected:
        raise InternalGuardError(f"Level {k} image has {len(image)} values, expected {expected}")
    return image


def _image_task(args) -> Tuple[Value, ...]:
    model, flag, k = args
    return tuple(valuation_image(model, flag, k))


def enumerate_semigroup(model: Model, flag: FlagSpec, K: int, workers: int = 1) -> SemigroupSample:
    """
    The semigroup truncated at level K.

    Levels are independent; with workers > 1 they are computed in a process
    pool and merged in level order.
    """
    if not isinstance(K, int) or K < 1:
        raise ContractViolation(f"Maximum level must be at least 1, got {K!r}")
    tasks = [(model, flag, k) for k in range(1, K + 1)]
    if workers > 1 and K > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            levels = tuple(pool.map(_image_task, tasks))
    else:
        levels = tuple(_image_task(task) for task in tasks)
    logger.info(f"Enumerated {sum(len(v) for v in levels)} semigroup points up to level {K}")
    return SemigroupSample(K, levels)
