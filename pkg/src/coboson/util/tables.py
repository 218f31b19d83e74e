"""
Deterministic CSV and JSON emission.

Floats are written as "%.16e" (17 significant digits, lowercase scientific) so a
value read back is bit-identical; integers and booleans are written as integers.
"""

from __future__ import annotations

import csv
import io
import json
import numbers
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Sequence

import numpy as np

from .filesystem import write_text_file


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return "%.16e" % float(value)
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    width = len(header)
    for row in rows:
        values = list(row)
        if len(values) != width:
            raise ValueError(f"Row has {len(values)} values, header has {width}")
        writer.writerow([format_value(value) for value in values])
    return buffer.getvalue()


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a CSV table atomically under a file lock."""
    return write_text_file(path, render_csv(header, rows))


def records_to_rows(records: Iterable[Any], columns: Sequence[str]) -> List[List[Any]]:
    """Pick `columns` from dataclass instances or mappings, in order."""
    rows = []
    for record in records:
        data: Mapping[str, Any] = asdict(record) if is_dataclass(record) else record
        rows.append([data[column] for column in columns])
    return rows


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n"


def write_json(path: Path | str, payload: Any) -> Path:
    """Write JSON with sorted keys so identical payloads give identical bytes."""
    return write_text_file(path, render_json(payload))
