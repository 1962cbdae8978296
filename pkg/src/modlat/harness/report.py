"""Experiment reports: CSV (per-sample rows) and a JSON mirror."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA = "mll-report-v1"


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    if v is None:
        return ""
    return str(v)


def _jsonable(v: Any):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols: list[str] = []
    for r in rows:
        for c in r:
            if c not in cols:
                cols.append(c)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue()


@dataclass
class ExperimentReport:
    kind: str
    config: dict
    records: list[dict] = field(default_factory=list)
    summary: list[dict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    wall_clock: float = 0.0
    schema: str = SCHEMA

    def provenance_lines(self) -> str:
        rest = sorted((k, v) for k, v in self.config.items() if k != "kind")
        items = [("schema", self.schema), ("kind", self.kind)] + rest
        return "".join(f"# {k}={_cell(v)}\n" for k, v in items)

    def to_csv(self) -> str:
        """Provenance comment lines, then a header row and one row per sample."""
        return self.provenance_lines() + _table(self.records)

    def summary_csv(self) -> str:
        return _table(self.summary)

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "kind": self.kind,
            "config": _jsonable(self.config),
            "flags": list(self.flags),
            "summary": _jsonable(self.summary),
            "records": _jsonable(self.records),
            "wall_clock": self.wall_clock,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def body_dict(self) -> dict:
        """Everything except the wall-clock field."""
        d = self.to_dict()
        d.pop("wall_clock")
        return d
