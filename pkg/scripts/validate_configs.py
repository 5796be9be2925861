# Validate the flag of every run config in a directory (defaults to configs/)

import sys
from pathlib import Path

from dotenv import load_dotenv

from okounkov_bodies.config import load_run_config
from okounkov_bodies.flags import validate_flag
from okounkov_bodies.utils import OkounkovError

DEFAULT_DIR = Path(__file__).resolve().parent.parent / "configs"


def validate_configs(directory: Path) -> int:
    """Print one line per config and return the number of failures."""
    load_dotenv()
    failures = 0
    for path in sorted(directory.glob("*.toml")) + sorted(directory.glob("*.json")):
        try:
            config = load_run_config(path)
            report = validate_flag(config.model, config.flag)
        except OkounkovError as e:
            print(f"{path.name}: error: {e}")
            failures += 1
            continue
        if report.ok:
            asserted = report.user_asserted
            note = f" (user-asserted: {', '.join(asserted)})" if asserted else ""
            print(f"{path.name}: ok{note}")
        else:
            failures += 1
            for check in report.failures():
                print(f"{path.name}: {check.name} failed: {check.detail}")
    return failures


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_DIR
    sys.exit(1 if validate_configs(target) else 0)
