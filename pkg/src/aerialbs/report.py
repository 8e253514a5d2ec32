"""Write report rows as a pretty table, CSV, or per-series plot data."""
from __future__ import annotations

import csv
import io
import re
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .scenario import ReportRow

FORMATS = ("pretty-table", "csv", "plot-data")
CSV_FIELDS = ("scenario", "metric", "value", "unit", "series", "x", "x_name", "note")


def _num(v: float | None) -> str:
    # repr round-trips floats exactly and is stable across runs
    return "" if v is None else repr(float(v))


def to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([r.scenario, r.metric, _num(r.value), r.unit, r.series, _num(r.x), r.x_name, r.note])
    return buf.getvalue()


def read_csv(text: str) -> list[ReportRow]:
    """Inverse of ``to_csv``."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(ReportRow(rec["scenario"], rec["metric"], float(rec["value"]), rec["unit"],
                             rec["note"], rec["series"], float(rec["x"]) if rec["x"] else None,
                             rec["x_name"]))
    return out


def to_pretty(rows: Sequence[ReportRow]) -> str:
    table = [("scenario", "metric", "value", "unit", "note")]
    for r in rows:
        x = f" @ {r.x_name}={r.x:.4g}" if r.x is not None else ""
        table.append((r.scenario, r.metric, f"{r.value:.6g}", r.unit, r.note + x))
    widths = [max(len(row[i]) for row in table) for i in range(4)]
    lines = []
    for i, row in enumerate(table):
        cells = [row[j].ljust(widths[j]) if j != 2 else row[j].rjust(widths[j]) for j in range(4)]
        lines.append("  ".join(cells + [row[4]]).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("_")


def plot_series(rows: Sequence[ReportRow]) -> dict[str, str]:
    """One CSV document per series: x column, then the value column."""
    groups: dict[str, list[ReportRow]] = {}
    for r in rows:
        if r.series and r.x is not None:
            groups.setdefault(r.series, []).append(r)
    files = {}
    for name, members in groups.items():
        first = members[0]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([first.x_name or "x", f"{first.metric}_{first.unit}"])
        for r in sorted(members, key=lambda r: r.x):
            w.writerow([_num(r.x), _num(r.value)])
        files[_safe(name) + ".csv"] = buf.getvalue()
    return files


def emit(rows: Sequence[ReportRow], fmt: str = "pretty-table", out: str | Path | None = None,
         name: str = "report", stream: TextIO | None = None) -> list[Path]:
    """Render ``rows``; with ``out`` write files there, else print to ``stream``.

    Returns the paths written. Nothing is written for an empty row set.
    """
    if not rows:
        raise ValueError("no rows to emit")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format '{fmt}' (known: {', '.join(FORMATS)})")
    stream = stream or sys.stdout
    if fmt == "plot-data":
        files = plot_series(rows)
        if not files:
            raise ValueError("no plottable series in rows")
        if out is None:
            raise ValueError("plot-data needs an output directory")
    else:
        text = to_csv(rows) if fmt == "csv" else to_pretty(rows)
        if out is None:
            stream.write(text)
            return []
        files = {f"{_safe(name)}.{'csv' if fmt == 'csv' else 'txt'}": text}
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for fname, text in files.items():
        p = out / fname
        p.write_text(text, encoding="utf-8", newline="")
        written.append(p)
    return written
