"""Magnetization traces as CSV or JSON tables."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path

COLUMNS = (
    "step",
    "time_fs",
    "mz_exact",
    "mz_trotter",
    "mz_noisy",
    "mz_sampled_mean",
    "mz_sampled_stderr",
)


@dataclass(frozen=True)
class ResultRow:
    step: int
    time_fs: float
    mz_exact: float | None = None
    mz_trotter: float | None = None
    mz_noisy: float | None = None
    mz_sampled_mean: float | None = None
    mz_sampled_stderr: float | None = None


@dataclass(frozen=True)
class ResultTable:
    """Rows ordered by step with ``time_fs == step * dt``."""

    dt: float
    rows: tuple[ResultRow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for k, r in enumerate(self.rows):
            if k and r.step <= self.rows[k - 1].step:
                raise ValueError("rows must be strictly ordered by step")
            if not math.isclose(r.time_fs, r.step * self.dt, rel_tol=1e-12, abs_tol=1e-12):
                raise ValueError(f"row {r.step}: time {r.time_fs} != step * dt")

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]

    def has_column(self, name: str) -> bool:
        return any(getattr(r, name) is not None for r in self.rows)


def _cell(v) -> str:
    if v is None:
        return ""
    return str(v) if isinstance(v, int) else repr(float(v))


def to_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in table.rows:
        w.writerow([_cell(v) for v in astuple(r)])
    return buf.getvalue()


def to_json(table: ResultTable) -> str:
    doc = {
        "dt_fs": table.dt,
        "columns": list(COLUMNS),
        "rows": [list(astuple(r)) for r in table.rows],
    }
    return json.dumps(doc, indent=1) + "\n"


def from_csv(text: str, dt: float | None = None) -> ResultTable:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        vals = [int(rec[0])] + [float(x) if x != "" else None for x in rec[1:]]
        rows.append(ResultRow(*vals))
    if dt is None:
        dt = next((r.time_fs / r.step for r in rows if r.step), 1.0)
    return ResultTable(dt, rows)


def from_json(text: str) -> ResultTable:
    doc = json.loads(text)
    if doc.get("columns") != list(COLUMNS):
        raise ValueError("unexpected JSON columns")
    names = [f.name for f in fields(ResultRow)]
    rows = [ResultRow(**dict(zip(names, r))) for r in doc["rows"]]
    return ResultTable(doc["dt_fs"], rows)


def write_results(table: ResultTable, path: str | Path, format: str | None = None) -> Path:
    """Write ``table`` as CSV or JSON; the format defaults to the file suffix."""
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".") or "csv").lower()
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown result format {fmt!r}")
    text = to_csv(table) if fmt == "csv" else to_json(table)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def read_results(path: str | Path, dt: float | None = None) -> ResultTable:
    path = Path(path)
    text = path.read_text()
    return from_json(text) if path.suffix.lower() == ".json" else from_csv(text, dt)
