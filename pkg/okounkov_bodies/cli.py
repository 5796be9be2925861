"""
Command-line front end.

Every subcommand reads a run config (--config), applies command-line
overrides on top of its [run] table and writes a JSON or CSV report.

Exit codes: 0 success, 1 negative result, 2 config or validation error,
3 hypothesis mismatch, 4 internal guard tripped.
"""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .config import RunConfig, Settings, configure_logging, load_run_config
from .flags import validate_flag
from .models import restriction_degree
from .okounkov import (
    body_approx, decompose, lemma_witness, predicted_body, restricted_body, scaling_check,
    semigroup_closure_check, valuation_axiom_check, verify_theorem, volume_vs_hilbert,
)
from .reports import write_report
from .utils import (
    ConfigError, ContractViolation, EffectivityError, HypothesisMismatch, InternalGuardError,
    OutsideSimplexError, format_rational, parse_rational,
)
from .valuation import enumerate_semigroup

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_CONFIG = 2
EXIT_HYPOTHESIS = 3
EXIT_GUARD = 4

Outcome = Tuple[int, Any, Optional[List[Dict[str, Any]]]]


def _parse_point(text: Any) -> Tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        values = list(text)
    else:
        values = [v for v in str(text).replace(" ", "").split(",") if v]
    try:
        return tuple(int(v) for v in values)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Point must be a list of integers, got {text!r}") from e


def _option(args: argparse.Namespace, config: RunConfig, name: str, default: Any = None) -> Any:
    value = getattr(args, name, None)
    return value if value is not None else config.get(name, default)


def _max_level(args: argparse.Namespace, config: RunConfig, settings: Settings) -> int:
    return settings.check_max_level(_option(args, config, "max_level", 1))


def _require_valid_flag(config: RunConfig) -> None:
    report = validate_flag(config.model, config.flag)
    if not report.ok:
        for check in report.failures():
            logger.error(f"Flag check '{check.name}' failed: {check.detail}")
        raise ConfigError(f"Flag validation failed: {', '.join(c.name for c in report.failures())}")


def cmd_body(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    K = _max_level(args, config, settings)
    sample = enumerate_semigroup(config.model, config.flag, K, workers=args.workers)
    body = body_approx(sample)
    report = {"K": K, "body": body.to_dict(), "sample": sample.to_dict()}
    try:
        report["restricted_body"] = restricted_body(sample).to_dict()
    except ContractViolation:
        report["restricted_body"] = None
    rows = [
        {"level": p.level, **{f"a{i + 1}": a for i, a in enumerate(p.value)}}
        for p in sample.points()
    ]
    return EXIT_OK, report, rows


def cmd_verify_theorem(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    K = _max_level(args, config, settings)
    report = verify_theorem(config.model, config.flag, K, workers=args.workers)
    payload: Dict[str, Any] = dict(report.to_dict())
    payload["body"] = report.body.to_dict()
    payload["prediction"] = report.prediction.to_dict()
    if args.decimal:
        payload["e1_gap_decimal"] = float(report.e1_gap)
    return (EXIT_OK if report.contained else EXIT_NEGATIVE), payload, None


def _decomposition_row(result, decimal: bool) -> Dict[str, Any]:
    row: Dict[str, Any] = {"level": result.level, "point": " ".join(str(a) for a in result.point)}
    for i, x in enumerate(result.coefficients):
        row[f"x{i}"] = format_rational(x)
        if decimal:
            row[f"x{i}_decimal"] = float(x)
    return row


def cmd_decompose(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    b = predicted_body(config.model, config.flag).b
    n = config.model.dimension
    if args.all:
        K = _max_level(args, config, settings)
        sample = enumerate_semigroup(config.model, config.flag, K, workers=args.workers)
        results = [decompose(p.value, p.level, b, n) for p in sample.points()]
    else:
        point = _option(args, config, "point")
        if point is None:
            raise ConfigError("decompose needs --point (or [run].point) unless --all is given")
        level = int(_option(args, config, "level", 1))
        results = [decompose(_parse_point(point), level, b, n)]
    bad = [r for r in results if not r.verify()]
    report = {"b": b, "decompositions": [r.to_dict() for r in results], "verified": not bad}
    rows = [_decomposition_row(r, args.decimal) for r in results]
    return (EXIT_NEGATIVE if bad else EXIT_OK), report, rows


def cmd_lemma_witness(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    c = _option(args, config, "c")
    if c is None:
        raise ConfigError("lemma-witness needs --c (or [run].c)")
    try:
        c = parse_rational(c)
    except ContractViolation as e:
        raise ConfigError(str(e)) from e
    witness = lemma_witness(config.model, config.flag, c, cap=settings.witness_cap)
    report: Dict[str, Any] = dict(witness.to_dict())
    report["b"] = restriction_degree(config.model, config.flag)
    if args.decimal:
        report["v1_over_m_decimal"] = witness.v1 / witness.m
    return EXIT_OK, report, None


def cmd_scaling_check(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    K = _max_level(args, config, settings)
    m = int(_option(args, config, "m", 2))
    settings.check_max_level(m * K)
    report = scaling_check(config.model, config.flag, m, K, workers=args.workers)
    return (EXIT_OK if report else EXIT_NEGATIVE), report.to_dict(), None


def cmd_volume_table(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    K = _option(args, config, "max_level", 1)
    if not args.hilbert_only:
        K = settings.check_max_level(K)
    rows = volume_vs_hilbert(config.model, config.flag, int(K), with_volume=not args.hilbert_only,
                             workers=args.workers)
    table = [row.to_dict(decimal=args.decimal) for row in rows]
    return EXIT_OK, {"K": K, "rows": table}, table


def cmd_axiom_check(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    trials = int(_option(args, config, "trials", 200))
    seed = int(_option(args, config, "seed", 0))
    K = _max_level(args, config, settings)
    report = valuation_axiom_check(config.model, config.flag, trials=trials, seed=seed, max_level=max(K, 2))
    closure = semigroup_closure_check(enumerate_semigroup(config.model, config.flag, max(K, 2), workers=args.workers))
    payload: Dict[str, Any] = dict(report.to_dict())
    payload["closure"] = {"checked": closure.checked, "closed": closure.closed,
                          "missing": [[k, list(v)] for k, v in closure.missing]}
    ok = report.passed and closure.closed
    return (EXIT_OK if ok else EXIT_NEGATIVE), payload, None


def cmd_validate(args: argparse.Namespace, config: RunConfig, settings: Settings) -> Outcome:
    report = validate_flag(config.model, config.flag)
    payload = {"model": config.model.to_dict(), "flag": config.flag.to_dict(), **report.to_dict()}
    rows = [check.to_dict() for check in report.checks]
    return (EXIT_OK if report.ok else EXIT_CONFIG), payload, rows


COMMANDS: Dict[str, Tuple[Callable[..., Outcome], str]] = {
    "body": (cmd_body, "Approximate the Okounkov body and dump the semigroup"),
    "verify-theorem": (cmd_verify_theorem, "Compare the body with the predicted simplex"),
    "decompose": (cmd_decompose, "Write semigroup points as convex combinations of the simplex vertices"),
    "lemma-witness": (cmd_lemma_witness, "Find a lifted section certifying (c, 0, ..., 0) in the body"),
    "scaling-check": (cmd_scaling_check, "Check that the body of L^m is m times the body of L"),
    "volume-table": (cmd_volume_table, "Tabulate dim H^0(L^k)/k^n against the body volume"),
    "axiom-check": (cmd_axiom_check, "Test the valuation axioms on seeded random sections"),
    "validate": (cmd_validate, "Run the flag hypothesis checks"),
}

DEFAULT_FORMATS = {"volume-table": "csv"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="TOML or JSON run config")
    common.add_argument("--max-level", type=int, dest="max_level", help="Truncation level K")
    common.add_argument("--out", help="Output path (default: standard output)")
    common.add_argument("--format", choices=["json", "csv"], dest="fmt", help="Report format")
    common.add_argument("--decimal", action="store_true", help="Add display-only float columns")
    common.add_argument("--workers", type=int, default=1, help="Process pool size for per-level work")

    parser = argparse.ArgumentParser(
        prog="okounkov-bodies",
        description="Exact Newton-Okounkov body computations for small projective and toric models.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        if name == "decompose":
            sub.add_argument("--point", help="Comma-separated valuation vector, e.g. 3,0")
            sub.add_argument("--level", type=int, help="Level k of the point")
            sub.add_argument("--all", action="store_true", help="Decompose every point up to --max-level")
        elif name == "lemma-witness":
            sub.add_argument("--c", help="Target c in (0, b), as p/q")
        elif name == "scaling-check":
            sub.add_argument("--m", type=int, help="Power m of the bundle")
        elif name == "volume-table":
            sub.add_argument("--hilbert-only", action="store_true", dest="hilbert_only",
                             help="Skip the body volume column")
        elif name == "axiom-check":
            sub.add_argument("--trials", type=int, help="Number of random section pairs")
            sub.add_argument("--seed", type=int, help="Random seed")
    return parser


def run(args: argparse.Namespace, settings: Settings) -> int:
    handler, _ = COMMANDS[args.command]
    if args.workers < 1:
        raise ConfigError(f"--workers must be at least 1, got {args.workers}")
    config = load_run_config(args.config)
    if args.command != "validate":
        _require_valid_flag(config)
    code, report, rows = handler(args, config, settings)
    fmt = args.fmt or DEFAULT_FORMATS.get(args.command, "json")
    write_report(report, args.out, fmt, rows)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point for the okounkov-bodies console script."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings.from_env()
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(settings)
    try:
        return run(args, settings)
    except (EffectivityError, OutsideSimplexError) as e:
        logger.error(f"Decomposition failed: {e}")
        return EXIT_NEGATIVE
    except (ConfigError, ContractViolation) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_CONFIG
    except HypothesisMismatch as e:
        logger.error(f"Hypothesis mismatch: {e}")
        return EXIT_HYPOTHESIS
    except InternalGuardError as e:
        logger.error(f"Internal guard tripped: {e}")
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
