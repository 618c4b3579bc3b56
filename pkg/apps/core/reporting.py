"""
CSV reports with a JSON provenance header.

Layout of every report file:

    # {"command": "fig4b", "config": {...}, "version": "0.1.0"}
    theta_h,steps,n_qubits,observable,value,stderr
    0.0,20,28,Z62,1.0,0.0
    ...

The header line is a single JSON object prefixed by "# " so CSV readers that
honour comment lines skip it and `read_report` can recover it.
"""

import csv
import io
import json
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from apps.core.exceptions import CircuitParseError

logger = logging.getLogger(__name__)

REPORT_VERSION = "0.1.0"
HEADER_PREFIX = "# "


def _jsonable(value: Any) -> Any:
    """Coerce numpy scalars, tuples, sets and paths into plain JSON values."""
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def _cell(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        return repr(value)
    return value


@dataclass
class Report:
    """Rows plus the provenance that produced them."""

    command: str
    columns: Sequence[str]
    config: Mapping[str, Any] = field(default_factory=dict)
    rows: list[Sequence[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} values, expected {len(self.columns)}"
            )
        self.rows.append(values)

    def extend(self, rows: Iterable[Sequence[Any]]) -> None:
        for row in rows:
            self.add(*row)

    def header(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": _jsonable(dict(self.config)),
            "version": REPORT_VERSION,
        }

    def write(self, stream: TextIO) -> None:
        stream.write(HEADER_PREFIX + json.dumps(self.header(), sort_keys=True) + "\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])

    def to_text(self) -> str:
        buf = io.StringIO()
        self.write(buf)
        return buf.getvalue()

    def save(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fh:
            self.write(fh)
        logger.info("Wrote %d rows to %s", len(self.rows), path)
        return path


def read_report(text: str) -> tuple[dict[str, Any], list[dict[str, str]]]:
    """Split report *text* into (header, rows as dicts of strings)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(HEADER_PREFIX):
        raise CircuitParseError("missing provenance header", field="line 1")
    try:
        header = json.loads(lines[0][len(HEADER_PREFIX) :])
    except json.JSONDecodeError as exc:
        raise CircuitParseError(str(exc), field="line 1") from exc
    reader = csv.DictReader(lines[1:])
    return header, list(reader)


__all__ = ["REPORT_VERSION", "Report", "read_report"]
