"""Report container with CSV and structured (JSON) serializations.

Rows are stored already formatted as strings, so writing the same report
twice is byte-identical and the summary is always recomputed from the rows.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

NA = "NA"

SWEEP_COLUMNS = (
    "a",
    "b",
    "delta_num",
    "delta_den",
    "measured_num",
    "measured_den",
    "envelope",
    "ratio",
    "method",
    "agreement",
)


class VerificationError(RuntimeError):
    """A proven bound failed or two computation routes disagreed."""


def _extreme(rows, columns, key_columns, col, pick_max=True):
    idx = columns.index(col)
    best = None
    best_row = None
    for row in rows:
        if row[idx] == NA:
            continue
        v = float(row[idx])
        if best is None or (v > best if pick_max else v < best):
            best, best_row = v, row
    if best is None:
        return None
    at = {k: best_row[columns.index(k)] for k in key_columns}
    return {"value": best, "at": at}


@dataclass
class Report:
    kind: str
    config: dict
    columns: tuple[str, ...]
    rows: list[tuple[str, ...]]
    key_columns: tuple[str, ...] = ("a",)
    max_columns: tuple[str, ...] = ("ratio",)
    min_columns: tuple[str, ...] = ()
    threshold: float | None = None
    skipped: list[dict] = field(default_factory=list)
    runtime: float = 0.0

    def summary(self) -> dict:
        out = {
            "record_count": len(self.rows),
            "skipped_count": len(self.skipped),
            "runtime_seconds": round(self.runtime, 6),
            "max": {c: _extreme(self.rows, self.columns, self.key_columns, c)
                    for c in self.max_columns},
        }
        if self.min_columns:
            out["min"] = {c: _extreme(self.rows, self.columns, self.key_columns, c, False)
                          for c in self.min_columns}
        if self.threshold is not None:
            out["threshold"] = self.threshold
            out["within_threshold"] = self.within_threshold()
        return out

    def max_of(self, col: str) -> float | None:
        ext = _extreme(self.rows, self.columns, self.key_columns, col)
        return None if ext is None else ext["value"]

    def min_of(self, col: str) -> float | None:
        ext = _extreme(self.rows, self.columns, self.key_columns, col, False)
        return None if ext is None else ext["value"]

    def within_threshold(self) -> bool:
        if self.threshold is None:
            return True
        for col in self.max_columns:
            m = self.max_of(col)
            if m is not None and m > self.threshold:
                return False
        return True

    def column(self, name: str) -> list[str]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_structured(self) -> str:
        doc = {
            "kind": self.kind,
            "config": self.config,
            "columns": list(self.columns),
            "key_columns": list(self.key_columns),
            "max_columns": list(self.max_columns),
            "min_columns": list(self.min_columns),
            "threshold": self.threshold,
            "runtime": self.runtime,
            "skipped": self.skipped,
            "rows": [list(r) for r in self.rows],
            "summary": self.summary(),
        }
        return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_structured(cls, text: str) -> "Report":
        doc = json.loads(text)
        return cls(
            kind=doc["kind"],
            config=doc["config"],
            columns=tuple(doc["columns"]),
            rows=[tuple(r) for r in doc["rows"]],
            key_columns=tuple(doc["key_columns"]),
            max_columns=tuple(doc["max_columns"]),
            min_columns=tuple(doc["min_columns"]),
            threshold=doc["threshold"],
            skipped=doc["skipped"],
            runtime=doc["runtime"],
        )

    def write(self, directory, stem: str | None = None) -> tuple[Path, Path]:
        """Write ``<stem>.csv`` and its sibling ``<stem>.json``."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        stem = stem or self.kind
        csv_path = directory / f"{stem}.csv"
        json_path = directory / f"{stem}.json"
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())
        with open(json_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_structured())
        return csv_path, json_path


def read_csv_rows(text: str) -> tuple[tuple[str, ...], list[tuple[str, ...]]]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    return header, [tuple(r) for r in reader]


def format_summary(report: Report) -> str:
    s = report.summary()
    lines = [f"{report.kind}: {s['record_count']} records, "
             f"{s['skipped_count']} skipped, {s['runtime_seconds']:.3f}s"]
    for label in ("max", "min"):
        for col, ext in s.get(label, {}).items():
            if ext is None:
                lines.append(f"  {label} {col}: n/a")
                continue
            where = ", ".join(f"{k}={v}" for k, v in ext["at"].items())
            lines.append(f"  {label} {col} = {ext['value']!r} at {where}")
    if "threshold" in s:
        verdict = "within" if s["within_threshold"] else "EXCEEDS"
        lines.append(f"  soft threshold {s['threshold']!r}: {verdict}")
    return "\n".join(lines)
