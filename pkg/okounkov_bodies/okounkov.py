"""
Okounkov bodies from semigroup samples, and the checks built on them:
the simplex prediction for complete-intersection flags, scaling, the
constructive convex decomposition, the witness search behind be_1 ∈ Δ,
the volume identity and the valuation axioms.
"""
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .flags import CoordinateFlag, CurveFlag, FlagSpec, complete_intersection_reason, flag_vertex_sections
from .linalg import QVector, gauss_solve
from .models import Model, ProjectiveModel, restriction_degree, restriction_matrix
from .polyring import MultiPoly, max_power_dividing, order_at_base_point, pullback
from .polytope import VPolytope, contains, convex_hull, equals, scale, volume
from .utils import (
    AxiomReportDict, AxiomViolationDict, ContractViolation, EffectivityError, HypothesisMismatch,
    InternalGuardError, OutsideSimplexError, RationalLike, TheoremReportDict, WitnessDict,
    format_rational, lex_key, parse_rational,
)
from .valuation import SemigroupSample, Value, enumerate_semigroup, triangular_basis, valuation

logger = logging.getLogger(__name__)

DEFAULT_WITNESS_CAP = 64


def body_approx(sample: SemigroupSample) -> VPolytope:
    """
    conv{ v/k : (k, v) in the sample }.

    Finite hulls are already closed, so no closure step is needed.
    """
    if not len(sample):
        raise ContractViolation("Cannot build a body from an empty sample")
    points = {
        QVector(tuple(Fraction(a, k) for a in value))
        for k, values in enumerate(sample.levels, start=1)
        for value in values
    }
    return convex_hull(points)


def _body_by_level(sample: SemigroupSample) -> List[VPolytope]:
    """body_approx of every truncation 1..K, reusing the previous hull."""
    bodies = []
    current: List[QVector] = []
    for k, values in enumerate(sample.levels, start=1):
        current = current + [QVector(tuple(Fraction(a, k) for a in value)) for value in values]
        hull = convex_hull(current)
        current = list(hull.vertices)
        bodies.append(hull)
    return bodies


@dataclass(frozen=True)
class TheoremPrediction:
    """The simplex conv{0, b·e_1, e_2, ..., e_n} predicted for a complete-intersection flag."""
    b: int
    simplex: VPolytope


def predicted_simplex(b: int, n: int) -> VPolytope:
    points = [QVector.zero(n), QVector.unit(n, 0).scaled(b)]
    points.extend(QVector.unit(n, i) for i in range(1, n))
    return convex_hull(points)


def predicted_body(model: Model, flag: FlagSpec) -> TheoremPrediction:
    """
    Raises:
        HypothesisMismatch: If the flag is not cut out by sections of L
    """
    reason = complete_intersection_reason(model, flag)
    if reason is not None:
        raise HypothesisMismatch(f"The simplex prediction does not apply: {reason}")
    b = restriction_degree(model, flag)
    return TheoremPrediction(b, predicted_simplex(b, model.dimension))


@dataclass(frozen=True)
class TheoremReport:
    contained: bool
    equal: bool
    e1_gap: Fraction
    b: int
    K: int
    body: VPolytope
    prediction: VPolytope

    def to_dict(self) -> TheoremReportDict:
        return {
            "contained": self.contained,
            "equal": self.equal,
            "e1_gap": format_rational(self.e1_gap),
            "b": self.b,
            "K": self.K,
        }


def verify_theorem(model: Model, flag: FlagSpec, K: int, workers: int = 1) -> TheoremReport:
    """
    Compare body_approx at level K with the predicted simplex.

    `contained` must always hold. `equal` and a zero `e1_gap` are only
    guaranteed in the limit, so they are reported rather than asserted.
    """
    prediction = predicted_body(model, flag)
    body = body_approx(enumerate_semigroup(model, flag, K, workers=workers))
    report = TheoremReport(
        contained=contains(prediction.simplex, body),
        equal=equals(prediction.simplex, body),
        e1_gap=prediction.b - body.max_coordinate(0),
        b=prediction.b,
        K=K,
        body=body,
        prediction=prediction.simplex,
    )
    logger.info(f"Theorem check at K={K}: contained={report.contained}, equal={report.equal}")
    return report


@dataclass(frozen=True)
class ScalingReport:
    """Outcome of comparing Δ(L^m) with m·Δ(L) at matching truncations."""
    holds: bool
    m: int
    K: int
    scaled_body: VPolytope
    dilated_body: VPolytope

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, object]:
        return {
            "holds": self.holds,
            "m": self.m,
            "K": self.K,
            "body_of_power": self.scaled_body.to_dict(),
            "dilated_body": self.dilated_body.to_dict(),
        }


def scaling_check(model: Model, flag: FlagSpec, m: int, K: int, workers: int = 1) -> ScalingReport:
    """
    body_approx(L^m, K) == m · body_approx(L, m·K).
    """
    if m < 1:
        raise ContractViolation(f"Scaling power must be at least 1, got {m}")
    power_model = model.reindexed(m)
    power_flag = flag.rescaled(m)
    power_body = body_approx(enumerate_semigroup(power_model, power_flag, K, workers=workers))
    base_body = body_approx(enumerate_semigroup(model, flag, m * K, workers=workers))
    dilated = scale(base_body, m)
    return ScalingReport(equals(power_body, dilated), m, K, power_body, dilated)


@dataclass(frozen=True)
class DecompositionResult:
    """
    Coefficients x_0, ..., x_n >= 0 with Σx_i = k and
    a = x_1·b·e_1 + x_2·e_2 + ... + x_n·e_n.
    """
    coefficients: Tuple[Fraction, ...]
    point: Tuple[int, ...]
    level: int
    b: int

    def reconstruct(self) -> Tuple[Fraction, ...]:
        x = self.coefficients
        return (x[1] * self.b,) + tuple(x[2:])

    def verify(self) -> bool:
        return (all(x >= 0 for x in self.coefficients)
                and sum(self.coefficients, Fraction(0)) == self.level
                and self.reconstruct() == tuple(Fraction(a) for a in self.point))

    def to_dict(self) -> Dict[str, object]:
        return {
            "point": list(self.point),
            "level": self.level,
            "b": self.b,
            "coefficients": [format_rational(x) for x in self.coefficients],
        }


def decompose(a: Sequence[int], k: int, b: int, n: int) -> DecompositionResult:
    """
    Write a/k as a convex combination of 0, b·e_1, e_2, ..., e_n.

    x_i = a_i for i >= 2, p = k - Σ_{i>=2} a_i, x_1 = a_1 / b, x_0 = p - x_1.

    Raises:
        EffectivityError: If p < 0
        OutsideSimplexError: If a_1 > p·b
    """
    a = tuple(a)
    if len(a) != n or any(not isinstance(x, int) or x < 0 for x in a):
        raise ContractViolation(f"Expected {n} nonnegative integers, got {a}")
    if k < 1 or b < 1:
        raise ContractViolation(f"Level and restriction degree must be positive, got k={k}, b={b}")
    p = k - sum(a[1:])
    if p < 0:
        raise EffectivityError(f"Point {a} at level {k} violates effectivity: remaining level {p} < 0")
    if a[0] > p * b:
        raise OutsideSimplexError(f"Point {a} at level {k} lies outside the predicted simplex: {a[0]} > {p}·{b}")
    x1 = Fraction(a[0], b)
    coefficients = (p - x1, x1) + tuple(Fraction(x) for x in a[1:])
    return DecompositionResult(coefficients, a, k, b)


def decompose_sample(sample: SemigroupSample, b: int) -> List[DecompositionResult]:
    """decompose every point of a sample; errors propagate."""
    return [decompose(point.value, point.level, b, sample.dimension) for point in sample.points()]


@dataclass(frozen=True)
class LemmaWitness:
    """
    A lifted section certifying (v_1/m, 0, ..., 0) ∈ Δ with c < v_1/m < b.
    """
    c: Fraction
    m: int
    v1: int
    tau: MultiPoly
    N: int
    lifted: MultiPoly
    value: Value

    def to_dict(self) -> WitnessDict:
        return {
            "c": format_rational(self.c),
            "m": self.m,
            "v1": self.v1,
            "N": self.N,
            "tau": self.tau.format(("u", "t")),
            "lifted": str(self.lifted),
            "valuation": list(self.value),
        }


def lemma_witness(model: Model, flag: FlagSpec, c: RationalLike, cap: Optional[int] = None) -> LemmaWitness:
    """
    Search for the section behind "(c, 0, ..., 0) ∈ Δ".

    Picks the smallest m admitting an integer v_1 with c < v_1/m < b, the
    smallest such v_1, sets τ = t^{v_1} on X_1 and finds the smallest N for
    which τ^N lies in the image of R_{N·m}. The lift is solved exactly and its
    valuation recomputed.

    Raises:
        ContractViolation: If c is not in (0, b), the cap is below 1 or the flag is not a curve flag
        InternalGuardError: If m or N would exceed the search cap
    """
    if not isinstance(flag, CurveFlag) or not isinstance(model, ProjectiveModel):
        raise ContractViolation("Witness search needs a curve flag on a projective model")
    if cap is None:
        cap = DEFAULT_WITNESS_CAP
    if cap < 1:
        raise ContractViolation(f"Witness cap must be at least 1, got {cap}")
    c = parse_rational(c)
    b = restriction_degree(model, flag)
    if not 0 < c < b:
        raise ContractViolation(f"Target c = {c} must lie strictly between 0 and b = {b}")

    m = 1
    while True:
        if m > cap:
            raise InternalGuardError(f"No level m <= {cap} admits v_1/m in ({c}, {b})")
        v1 = math.floor(c * m) + 1
        if v1 < b * m:
            break
        m += 1

    for N in range(1, cap + 1):
        level = N * m
        matrix = restriction_matrix(model, flag, level)
        target = [Fraction(1 if i == N * v1 else 0) for i in range(b * level + 1)]
        solution = gauss_solve(matrix.transpose(), QVector(tuple(target)))
        if solution is None:
            continue
        basis = model.basis_of_level(level).sections
        lifted = MultiPoly.zero(model.num_vars)
        for coefficient, section in zip(solution, basis):
            if coefficient:
                lifted = lifted + section * coefficient
        tau = MultiPoly.monomial((b * m - v1, v1))
        if pullback(lifted, flag.param) != tau ** N:
            raise InternalGuardError("Lifted section does not restrict to τ^N")
        value = valuation(model, flag, lifted, level)
        expected = (N * v1,) + (0,) * (model.dimension - 1)
        if value != expected:
            raise InternalGuardError(f"Lifted section has valuation {value}, expected {expected}")
        logger.info(f"Witness for c={c}: m={m}, v1={v1}, N={N}")
        return LemmaWitness(c, m, v1, tau, N, lifted, value)
    raise InternalGuardError(f"τ^N is not in the image of R_(N·{m}) for any N <= {cap}")


@dataclass(frozen=True)
class VolumeRow:
    k: int
    hilbert_dim: int
    ratio: Fraction
    volume: Optional[Fraction]

    def to_dict(self, decimal: bool = False) -> Dict[str, object]:
        row: Dict[str, object] = {
            "k": self.k,
            "hilbert_dim": self.hilbert_dim,
            "ratio": format_rational(self.ratio),
            "volume": format_rational(self.volume) if self.volume is not None else "",
        }
        if decimal:
            row["ratio_decimal"] = float(self.ratio)
            row["volume_decimal"] = float(self.volume) if self.volume is not None else None
        return row


def volume_vs_hilbert(model: Model, flag: FlagSpec, K: int, with_volume: bool = True,
                      workers: int = 1) -> List[VolumeRow]:
    """
    Rows (k, dim H^0(L^k)/k^n, vol body_approx(k)) for k = 1..K.

    With `with_volume` false only the Hilbert column is computed.
    """
    if K < 1:
        raise ContractViolation(f"Maximum level must be at least 1, got {K}")
    n = model.dimension
    volumes: List[Optional[Fraction]] = [None] * K
    if with_volume:
        sample = enumerate_semigroup(model, flag, K, workers=workers)
        volumes = [volume(body) for body in _body_by_level(sample)]
    rows = []
    for k in range(1, K + 1):
        dim = model.hilbert_dim(k)
        rows.append(VolumeRow(k, dim, Fraction(dim, k ** n), volumes[k - 1]))
    return rows


@dataclass
class AxiomReport:
    trials: int
    seed: int
    violations: List[AxiomViolationDict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> AxiomReportDict:
        return {"trials": self.trials, "seed": self.seed, "passed": self.passed, "violations": self.violations}


def _random_section(rng: random.Random, sections: Sequence[MultiPoly], num_vars: int) -> MultiPoly:
    while True:
        chosen = rng.sample(range(len(sections)), rng.randint(1, min(4, len(sections))))
        result = MultiPoly.zero(num_vars)
        for index in sorted(chosen):
            result = result + sections[index] * rng.choice([-3, -2, -1, 1, 2, 3])
        if not result.is_zero():
            return result


def _collision_pair(rng: random.Random, model: Model, flag: FlagSpec, k: int,
                    sections: Sequence[MultiPoly]) -> Optional[Tuple[MultiPoly, MultiPoly]]:
    """Two sections of equal value whose leading coefficients cancel in the sum."""
    from .valuation import valuation_with_lead
    groups: Dict[Value, List[Tuple[MultiPoly, Fraction]]] = {}
    for s in sections:
        value, lead = valuation_with_lead(model, flag, s, k)
        groups.setdefault(value, []).append((s, lead))
    colliding = [g for _, g in sorted(groups.items()) if len(g) > 1]
    if not colliding:
        return None
    group = rng.choice(colliding)
    (f, lead_f), (g, lead_g) = rng.sample(group, 2)
    scale_f = Fraction(rng.choice([-2, -1, 1, 2]))
    return f * scale_f, g * (-scale_f * lead_f / lead_g)


def _sum_dominates(total: Value, first: Value, second: Value) -> bool:
    return lex_key(total) >= min(lex_key(first), lex_key(second))


def valuation_axiom_check(model: Model, flag: FlagSpec, trials: int = 200, seed: int = 0,
                          max_level: int = 2) -> AxiomReport:
    """
    Check v(fg) = v(f) + v(g) and v(f+g) >= min(v(f), v(g)) on seeded random pairs.

    Every other sum pair is built so that the leading coefficients cancel,
    which is where the inequality can be strict.
    """
    rng = random.Random(seed)
    report = AxiomReport(trials, seed)
    bases = {k: model.basis_of_level(k).sections for k in range(1, max_level + 1)}
    for trial in range(trials):
        k1 = rng.randint(1, max_level)
        k2 = rng.randint(1, max_level)
        f = _random_section(rng, bases[k1], model.num_vars)
        g = _random_section(rng, bases[k2], model.num_vars)
        vf, vg = valuation(model, flag, f, k1), valuation(model, flag, g, k2)
        expected = tuple(a + b for a, b in zip(vf, vg))
        product = valuation(model, flag, f * g, k1 + k2)
        if product != expected:
            report.violations.append({"kind": "multiplicativity", "f": str(f), "g": str(g),
                                      "expected": list(expected), "actual": list(product)})

        pair = _collision_pair(rng, model, flag, k1, bases[k1]) if trial % 2 else None
        if pair is None:
            pair = (f, _random_section(rng, bases[k1], model.num_vars))
        f1, g1 = pair
        total = f1 + g1
        if total.is_zero():
            continue
        v1, w1 = valuation(model, flag, f1, k1), valuation(model, flag, g1, k1)
        vt = valuation(model, flag, total, k1)
        if not _sum_dominates(vt, v1, w1):
            report.violations.append({"kind": "superadditivity", "f": str(f1), "g": str(g1),
                                      "expected": list(min(v1, w1, key=lex_key)), "actual": list(vt)})
    if report.violations:
        logger.warning(f"Valuation axioms violated {len(report.violations)} times in {trials} trials")
    return report


def restricted_body(sample: SemigroupSample) -> VPolytope:
    """
    Δ_1 from the values of sections not vanishing on X_1: hull of
    { a_1/k : (k, (a_1, 0, ..., 0)) in the sample }.
    """
    points = [
        QVector((Fraction(value[0], k),))
        for k, values in enumerate(sample.levels, start=1)
        for value in values
        if all(a == 0 for a in value[1:])
    ]
    if not points:
        raise ContractViolation("No sampled section is nonzero on X_1")
    return convex_hull(points)


@dataclass(frozen=True)
class PeeledSection:
    """
    The residual of s on X_1 after dividing out the flag sections.

    `orders` holds (a_2, ..., a_n); `remaining_level` is p = k - Σ a_i.
    """
    orders: Tuple[int, ...]
    restricted: MultiPoly
    remaining_level: int
    a1: int


def peel_section(model: Model, flag: FlagSpec, section: MultiPoly, k: int) -> PeeledSection:
    """
    Divide out ξ_1, ..., ξ_{n-1} in computation order and restrict to X_1.

    Raises:
        HypothesisMismatch: If the flag is not cut out by sections of L
    """
    sections = flag_vertex_sections(model, flag)
    valuation(model, flag, section, k)
    orders: List[int] = []
    residual = section
    for xi, _ in sections:
        order, residual = max_power_dividing(residual, xi)
        orders.append(order)
        if isinstance(flag, CoordinateFlag):
            index = next(i for i, a in enumerate(xi.exponents()[0]) if a)
            residual = MultiPoly(residual.num_vars,
                                 {e: c for e, c in residual.terms() if e[index] == 0})
    if isinstance(flag, CurveFlag):
        restricted = pullback(residual, flag.param)
        a1 = order_at_base_point(restricted)
    else:
        restricted = residual
        a1 = min(e[flag.order[1]] for e in restricted.exponents())
    orders_by_coordinate = tuple(reversed(orders))
    return PeeledSection(orders_by_coordinate, restricted, k - sum(orders), a1)


@dataclass
class ClosureReport:
    checked: int = 0
    missing: List[Tuple[int, Value]] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return not self.missing


def semigroup_closure_check(sample: SemigroupSample) -> ClosureReport:
    """Every pair with k_1 + k_2 <= K must sum to a sampled point."""
    report = ClosureReport()
    levels = {k: set(values) for k, values in enumerate(sample.levels, start=1)}
    for k1 in range(1, sample.max_level + 1):
        for k2 in range(k1, sample.max_level + 1 - k1):
            for v1 in sample.levels[k1 - 1]:
                for v2 in sample.levels[k2 - 1]:
                    total = tuple(a + b for a, b in zip(v1, v2))
                    report.checked += 1
                    if total not in levels[k1 + k2]:
                        report.missing.append((k1 + k2, total))
    return report


def basepoint_free_check(model: Model, flag: FlagSpec) -> bool:
    """Whether some level-1 section is nonvanishing along the whole flag."""
    zero = (0,) * model.dimension
    return zero in triangular_basis(model, flag, 1)
