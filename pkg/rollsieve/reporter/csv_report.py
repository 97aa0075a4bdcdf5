# rollsieve - CSV measurement reports
from __future__ import annotations

import csv
import sys
from pathlib import Path
from typing import Any, Iterable, TextIO


def _cell(value: Any) -> Any:
    # decimal notation, never exponent form
    if isinstance(value, float):
        return f"{value:.6f}"
    return value


def write_rows(rows: Iterable[dict[str, Any]], fields: list[str], out: TextIO) -> int:
    """One header row, then one row per measurement. Returns rows written."""
    writer = csv.DictWriter(out, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in row.items()})
        count += 1
    return count


def write_report(rows: Iterable[dict[str, Any]], fields: list[str], destination: Path | None = None) -> int:
    if destination is None:
        return write_rows(rows, fields, sys.stdout)
    destination.parent.mkdir(parents=True, exist_ok=True)
    with open(destination, "w", newline="", encoding="ascii") as f:
        return write_rows(rows, fields, f)
