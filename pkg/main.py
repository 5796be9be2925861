"""
Main script to verify the bundled model/flag configurations.

This script:
1. Loads environment variables
2. Loads every config under configs/
3. Validates the flag of each config
4. Builds the body and compares it with the predicted simplex where it applies
5. Prints the volume table against the Hilbert function
"""

import json
import logging
from pathlib import Path

from okounkov_bodies.config import Settings, configure_logging, load_run_config
from okounkov_bodies.flags import is_complete_intersection, validate_flag
from okounkov_bodies.okounkov import body_approx, verify_theorem, volume_vs_hilbert
from okounkov_bodies.polytope import volume
from okounkov_bodies.utils import OkounkovError
from okounkov_bodies.valuation import enumerate_semigroup

CONFIG_DIR = Path(__file__).resolve().parent / "configs"

logger = logging.getLogger(__name__)


def verify_configuration(path: Path, settings: Settings) -> bool:
    """Run the checks for one config; returns False on a negative result."""
    config = load_run_config(path)
    model, flag = config.model, config.flag
    K = settings.check_max_level(config.max_level)

    print(f"\n=== {path.name}: {model}, {flag.variant} flag ===\n")

    # 1. Flag hypotheses
    print("1. Flag Checks:")
    print("-" * 50)
    report = validate_flag(model, flag)
    for check in report.checks:
        print(f"- {check.name}: {check.status} ({check.detail})")
    if not report.ok:
        print("Flag is not admissible; skipping")
        return False

    # 2. Body at the configured truncation
    print(f"\n2. Body at K = {K}:")
    print("-" * 50)
    body = body_approx(enumerate_semigroup(model, flag, K))
    print(json.dumps(body.to_dict(), indent=2))
    print(f"Volume: {volume(body)}")

    # 3. Predicted simplex
    ok = True
    print("\n3. Predicted Simplex:")
    print("-" * 50)
    if is_complete_intersection(model, flag):
        theorem = verify_theorem(model, flag, K)
        print(json.dumps(theorem.to_dict(), indent=2))
        ok = theorem.contained
    else:
        print("Flag is not cut out by sections of L; no simplex prediction")

    # 4. Volume against the Hilbert function
    print("\n4. Volume vs Hilbert Function:")
    print("-" * 50)
    for row in volume_vs_hilbert(model, flag, K):
        print(f"k={row.k}: dim/k^n = {row.ratio}, volume = {row.volume}")
    return ok


def verify_bundled_configurations() -> None:
    """Verify every bundled config."""
    settings = Settings.from_env()
    configure_logging(settings)

    failures = []
    for path in sorted(CONFIG_DIR.glob("*.toml")):
        try:
            if not verify_configuration(path, settings):
                failures.append(path.name)
        except OkounkovError as e:
            logger.error(f"Verification of {path.name} failed: {e}")
            failures.append(path.name)

    print("\n=== Verification Complete ===")
    if failures:
        print(f"Failed: {', '.join(failures)}")


if __name__ == "__main__":
    verify_bundled_configurations()
