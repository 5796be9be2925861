"""
Report serialization: deterministic JSON and pandas-backed CSV tables.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

import pandas as pd

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def dumps(report: Any) -> str:
    """JSON with sorted keys and fixed indentation, newline-terminated."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _open_target(out: Optional[PathLike]) -> TextIO:
    if out is None or str(out) == "-":
        return sys.stdout
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="")


def write_json(report: Any, out: Optional[PathLike] = None) -> None:
    target = _open_target(out)
    try:
        target.write(dumps(report))
    finally:
        if target is not sys.stdout:
            target.close()
            logger.info(f"Wrote JSON report to {out}")


def table_frame(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> pd.DataFrame:
    """
    A DataFrame over report rows.

    Exact rationals stay "p/q" strings; decimal columns, when present, are
    display-only.
    """
    frame = pd.DataFrame(list(rows), columns=columns)
    if frame.empty and columns is None:
        logger.warning("Writing an empty table")
    return frame


def write_csv(rows: Sequence[Dict[str, Any]], out: Optional[PathLike] = None,
              columns: Optional[List[str]] = None) -> None:
    frame = table_frame(rows, columns)
    target = _open_target(out)
    try:
        frame.to_csv(target, index=False, lineterminator="\n")
    finally:
        if target is not sys.stdout:
            target.close()
            logger.info(f"Exported {len(frame)} rows to {out}")


def write_report(report: Any, out: Optional[PathLike] = None, fmt: str = "json",
                 rows: Optional[Sequence[Dict[str, Any]]] = None) -> None:
    """
    Emit a report as JSON, or its tabular rows as CSV.

    Reports without a tabular form fall back to JSON when CSV is requested.
    """
    if fmt == "csv":
        if rows is None:
            logger.warning("Report has no tabular form; writing JSON instead of CSV")
        else:
            write_csv(rows, out)
            return
    write_json(report, out)


def read_csv_table(path: PathLike) -> pd.DataFrame:
    """Load a table written by write_csv; every column is read as text."""
    return pd.read_csv(path, dtype=str, keep_default_na=False)
