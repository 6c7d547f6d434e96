"""Experiment reports and their CSV / JSON serializations."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__

COLUMNS = ("p", "spec", "measured", "predicted", "abs_dev", "rel_dev", "family", "runtime_ms")
# Excluded when comparing reruns against golden files.
VOLATILE = ("runtime_ms",)


def sig12(x):
    """Round a real to 12 significant digits; ints and None pass through."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    x = float(x)
    if not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


def make_row(p, spec: str, measured, predicted=None, family: str = "", runtime_ms: float = 0.0, **extra) -> dict:
    row = {"p": p, "spec": spec, "measured": measured, "predicted": sig12(predicted)}
    if predicted is None or measured is None:
        row["abs_dev"] = row["rel_dev"] = None
    else:
        dev = abs(float(measured) - float(predicted))
        row["abs_dev"] = sig12(dev)
        row["rel_dev"] = sig12(dev / max(float(predicted), 1.0))
    row["family"] = family
    row["runtime_ms"] = round(float(runtime_ms), 3)
    for key, value in extra.items():
        row[key] = sig12(value)
    return row


@dataclass
class ScanReport:
    experiment: str
    params: dict
    rows: list[dict]
    summary: dict = field(default_factory=dict)
    generated_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    tool_version: str = __version__

    def __post_init__(self):
        # Not-found rows (p is None) go last.
        self.rows.sort(key=lambda r: (r["p"] is None, r["p"] if r["p"] is not None else 0))

    @property
    def columns(self) -> list[str]:
        cols = list(COLUMNS)
        for row in self.rows:
            for key in row:
                if key not in cols:
                    cols.append(key)
        return cols

    def to_json(self) -> str:
        doc = {
            "experiment": self.experiment,
            "params": self.params,
            "generated_at": self.generated_at,
            "tool_version": self.tool_version,
            "columns": self.columns,
            "rows": self.rows,
            "summary": self.summary,
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ScanReport":
        doc = json.loads(text)
        return cls(
            experiment=doc["experiment"],
            params=doc["params"],
            rows=doc["rows"],
            summary=doc.get("summary", {}),
            generated_at=doc["generated_at"],
            tool_version=doc["tool_version"],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = self.columns
        writer.writerow(cols)
        for row in self.rows:
            writer.writerow([_cell(row.get(c)) for c in cols])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def read_csv(text: str) -> list[dict]:
    """Parse a report CSV back into rows of strings (empty cells become None)."""
    reader = csv.DictReader(io.StringIO(text))
    return [{k: (v if v != "" else None) for k, v in row.items()} for row in reader]
