"""Check records and their byte-stable JSON / CSV serialisation."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"


@dataclass
class Record:
    name: str
    anchor: str
    expected: object
    computed: object
    residual: float | None = None
    verdict: str = PASS
    detail: dict = field(default_factory=dict)

    @classmethod
    def equality(cls, name: str, anchor: str, expected, computed, **detail) -> "Record":
        return cls(name, anchor, expected, computed, None, PASS if expected == computed else FAIL, detail)

    @classmethod
    def bound(cls, name: str, anchor: str, residual: float, threshold: float, **detail) -> "Record":
        ok = residual is not None and not math.isnan(residual) and residual < threshold
        return cls(name, anchor, f"< {threshold:.0e}", residual, residual, PASS if ok else FAIL, detail)

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "expected": self.expected,
            "computed": self.computed,
            "residual": self.residual,
            "verdict": self.verdict,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    command: str
    config: dict
    records: list[Record] = field(default_factory=list)
    tables: dict[str, list[dict]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.verdict != FAIL for r in self.records)

    @property
    def failures(self) -> list[Record]:
        return [r for r in self.records if r.verdict == FAIL]

    def extend(self, other: "Report"):
        self.records.extend(other.records)
        for k, rows in other.tables.items():
            self.tables.setdefault(k, []).extend(rows)

    def metadata(self) -> dict:
        return {"version": __version__, "config_hash": config_hash(self.config), "command": self.command}

    def as_dict(self) -> dict:
        return {
            "metadata": self.metadata(),
            "config": self.config,
            "status": PASS if self.passed else FAIL,
            "summary": {
                "records": len(self.records),
                "failed": len(self.failures),
            },
            "records": [r.as_dict() for r in self.records],
            "tables": self.tables,
        }


def config_hash(config: dict) -> str:
    return hashlib.sha256(dumps(config).encode()).hexdigest()[:16]


def _encode(obj, out: list[str]):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append("%.12e" % obj if math.isfinite(obj) else json.dumps(str(obj)))
    elif isinstance(obj, complex):
        _encode([obj.real, obj.imag], out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj, key=str)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, x in enumerate(obj):
            if i:
                out.append(",")
            _encode(x, out)
        out.append("]")
    elif hasattr(obj, "item"):  # numpy scalars
        _encode(obj.item(), out)
    else:
        out.append(json.dumps(str(obj)))


def dumps(obj) -> str:
    """JSON with sorted keys and every float written as %.12e."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


def _cell(x) -> str:
    if isinstance(x, float):
        return "%.12e" % x
    if x is None:
        return ""
    if isinstance(x, (dict, list, tuple)):
        return dumps(x)
    return str(x)


def records_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "anchor", "expected", "computed", "residual", "verdict"])
    for r in report.records:
        w.writerow([r.name, r.anchor, _cell(r.expected), _cell(r.computed), _cell(r.residual), r.verdict])
    return buf.getvalue()


def table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = sorted({k for row in rows for k in row})
    w.writerow(cols)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in cols])
    return buf.getvalue()


def emit(report: Report, out_dir: str | Path, fmt: str = "json") -> list[Path]:
    """Write ``<command>.json`` and, for ``csv``, the record and table CSVs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / f"{report.command}.json"
    path.write_text(dumps(report.as_dict()) + "\n", encoding="utf-8")
    written.append(path)
    if fmt == "csv":
        path = out / f"{report.command}.csv"
        path.write_text(records_csv(report), encoding="utf-8")
        written.append(path)
        for name, rows in sorted(report.tables.items()):
            path = out / f"{report.command}_{name}.csv"
            path.write_text(table_csv(rows), encoding="utf-8")
            written.append(path)
    return written
