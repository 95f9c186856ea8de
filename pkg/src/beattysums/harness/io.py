"""Flat-file persistence for result rows and fit reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from pathlib import Path

from .experiment import DecayFitReport, ResultRow

COLUMNS = ("k", "class", "chi_id", "beta", "N", "abs_S_over_N", "abs_U_over_N", "wall_ms")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)  # shortest round-trip form, platform independent
    return str(v)


def row_record(row: ResultRow) -> dict:
    return {"k": row.k, "class": row.cls, "chi_id": row.chi_id, "beta": row.beta, "N": row.N,
            "abs_S_over_N": row.abs_S_over_N, "abs_U_over_N": row.abs_U_over_N,
            "wall_ms": row.wall_ms}


def render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        rec = row_record(r)
        w.writerow([_fmt(rec[c]) for c in COLUMNS])
    return buf.getvalue()


def render_json(rows) -> str:
    return json.dumps([row_record(r) for r in rows], indent=1) + "\n"


def _write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_results(rows, fmt: str, path) -> None:
    if fmt == "csv":
        text = render_csv(rows)
    elif fmt == "json":
        text = render_json(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    _write_text(path, text)


def read_results(path, fmt: str | None = None) -> list[dict]:
    """Read rows back as dicts (used by tests and the determinism check)."""
    p = Path(path)
    fmt = fmt or ("json" if p.suffix == ".json" else "csv")
    try:
        text = p.read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if fmt == "json":
        return json.loads(text)
    return list(csv.DictReader(io.StringIO(text)))


def write_report(report: DecayFitReport, path, extra: dict | None = None) -> None:
    data = asdict(report)
    data["decade_means"] = {str(k): v for k, v in report.decade_means.items()}
    if extra:
        data.update(extra)
    _write_text(path, json.dumps(data, indent=1, sort_keys=True) + "\n")


def report_path(results_path) -> Path:
    p = Path(results_path)
    return p.with_name(p.stem + ".report.json")
