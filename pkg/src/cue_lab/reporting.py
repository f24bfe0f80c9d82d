"""JSON and CSV reports.

Every numeric field is written as a string so that exact rationals survive:
integers as "20", rationals as "num/den", floats via repr.

CSV column order:
    functional, parameters, value_re, value_im, abs_error, method, seed,
    stderr, runtime_ms, paper_anchor
`parameters` holds a JSON object; empty cells mean "absent".
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

CSV_COLUMNS = (
    "functional",
    "parameters",
    "value_re",
    "value_im",
    "abs_error",
    "method",
    "seed",
    "stderr",
    "runtime_ms",
    "paper_anchor",
)


def format_number(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def parse_number(s: str):
    """Inverse of format_number: int, Fraction or float."""
    if "/" in s:
        return Fraction(s)
    try:
        return int(s)
    except ValueError:
        return float(s)


def _param_value(v):
    if isinstance(v, (Fraction, int, float)) and not isinstance(v, bool):
        return format_number(v)
    if isinstance(v, (list, tuple)):
        return [_param_value(x) for x in v]
    return v


@dataclass
class Report:
    functional: str
    parameters: dict
    value: Any
    abs_error: Any
    method: str
    paper_anchor: str
    runtime_ms: float = 0.0
    seed: int | None = None
    stderr: float | None = None
    extra: dict = field(default_factory=dict)

    def value_parts(self) -> tuple[str, str]:
        v = self.value
        if isinstance(v, complex):
            return format_number(v.real), format_number(v.imag)
        return format_number(v), "0"

    def to_dict(self) -> dict:
        re, im = self.value_parts()
        out = {
            "functional": self.functional,
            "parameters": {k: _param_value(v) for k, v in self.parameters.items()},
            "value": {"re": re, "im": im},
            "abs_error": format_number(self.abs_error),
            "method": self.method,
            "runtime_ms": format_number(round(self.runtime_ms, 3)),
            "paper_anchor": self.paper_anchor,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.stderr is not None:
            out["stderr"] = format_number(self.stderr)
        if self.extra:
            out["extra"] = self.extra
        return out


def to_json(reports: list[Report]) -> str:
    items = [r.to_dict() for r in reports]
    return json.dumps(items[0] if len(items) == 1 else items, indent=2, ensure_ascii=False)


def to_csv(reports: list[Report]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        d = r.to_dict()
        w.writerow(
            [
                d["functional"],
                json.dumps(d["parameters"], ensure_ascii=False, sort_keys=True),
                d["value"]["re"],
                d["value"]["im"],
                d["abs_error"],
                d["method"],
                d.get("seed", ""),
                d.get("stderr", ""),
                d["runtime_ms"],
                d["paper_anchor"],
            ]
        )
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    """Parse CSV written by to_csv back into the JSON-shaped dictionaries."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        if tuple(rec.keys()) != CSV_COLUMNS:
            raise ValueError("unexpected CSV columns")
        d = {
            "functional": rec["functional"],
            "parameters": json.loads(rec["parameters"]),
            "value": {"re": rec["value_re"], "im": rec["value_im"]},
            "abs_error": rec["abs_error"],
            "method": rec["method"],
            "runtime_ms": rec["runtime_ms"],
            "paper_anchor": rec["paper_anchor"],
        }
        if rec["seed"] != "":
            d["seed"] = int(rec["seed"])
        if rec["stderr"] != "":
            d["stderr"] = rec["stderr"]
        rows.append(d)
    return rows


def emit_report(reports: list[Report] | Report, fmt: str = "json", path: str | None = None) -> str:
    if isinstance(reports, Report):
        reports = [reports]
    if fmt == "json":
        text = to_json(reports) + "\n"
    elif fmt == "csv":
        text = to_csv(reports)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    return text
