"""
Shared exceptions, report shapes and rational formatting helpers.
"""
import re
from fractions import Fraction
from typing import List, Optional, TypedDict, Union

RationalLike = Union[Fraction, int, str]

_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


class OkounkovError(Exception):
    """Base exception for every error raised by okounkov_bodies."""
    pass


class ContractViolation(OkounkovError, ValueError):
    """Raised when an operation is called outside its precondition."""
    pass


class EffectivityError(ContractViolation):
    """Raised when a decomposition would need a negative remaining level."""
    pass


class OutsideSimplexError(ContractViolation):
    """Raised when a point lies beyond the predicted simplex."""
    pass


class ConfigError(OkounkovError):
    """Raised for malformed model, flag or run configurations."""
    pass


class HypothesisMismatch(OkounkovError):
    """Raised when a flag is not of complete-intersection type."""
    pass


class InternalGuardError(OkounkovError):
    """Raised when a runtime guard on an internal bound trips."""
    pass


class FlagCheckDict(TypedDict):
    name: str
    status: str
    detail: str


class PolytopeDict(TypedDict):
    dim: int
    vertices: List[List[str]]


class TheoremReportDict(TypedDict):
    contained: bool
    equal: bool
    e1_gap: str
    b: int
    K: int


class WitnessDict(TypedDict):
    c: str
    m: int
    v1: int
    N: int
    tau: str
    lifted: str
    valuation: List[int]


class AxiomViolationDict(TypedDict):
    kind: str
    f: str
    g: str
    expected: List[int]
    actual: Optional[List[int]]


class AxiomReportDict(TypedDict):
    trials: int
    seed: int
    passed: bool
    violations: List[AxiomViolationDict]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse an exact rational from an int, a Fraction or a "p/q" / "p" string.

    Args:
        value: The value to parse

    Returns:
        Fraction: The canonical rational

    Raises:
        ContractViolation: If the value is a float, a malformed string or has a zero denominator
    """
    if isinstance(value, bool):
        raise ContractViolation(f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = "".join(value.split())
        if not _RATIONAL_PATTERN.match(text):
            raise ContractViolation(f"Malformed rational literal: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError as e:
            raise ContractViolation(f"Zero denominator in {value!r}") from e
    raise ContractViolation(f"Not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Format a rational as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def lex_key(value: tuple) -> tuple:
    """
    Sort key for valuation vectors in computation order.

    Coordinate n is compared first, coordinate 1 last.
    """
    return tuple(reversed(value))

