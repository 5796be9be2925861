# Export the valuation points of a run config to CSV
# Usage: python scripts/export_semigroup.py CONFIG [OUT.csv]

import sys

from dotenv import load_dotenv

from okounkov_bodies.config import Settings, configure_logging, load_run_config
from okounkov_bodies.reports import write_csv
from okounkov_bodies.valuation import enumerate_semigroup


def export_semigroup(config_path: str, out: str = None) -> None:
    load_dotenv()
    settings = Settings.from_env(dotenv=False)
    configure_logging(settings)

    config = load_run_config(config_path)
    K = settings.check_max_level(config.max_level)
    sample = enumerate_semigroup(config.model, config.flag, K)

    n = sample.dimension
    columns = ["level"] + [f"a{i + 1}" for i in range(n)]
    rows = []
    for point in sample.points():
        row = {"level": point.level}
        row.update({f"a{i + 1}": a for i, a in enumerate(point.value)})
        rows.append(row)
    write_csv(rows, out, columns)


if __name__ == "__main__":
    if len(sys.argv) < 2:
        print("Usage: export_semigroup.py CONFIG [OUT.csv]")
        sys.exit(2)
    export_semigroup(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else None)
