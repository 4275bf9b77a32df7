"""Reports: a header of run parameters and one row per check.

Three renderings share one schema.

* ``table``: aligned text for people;
* ``json``: ``{"header": {...}, "rows": [{...}, ...]}``;
* ``csv``: one header line, then one line per row.

Row fields: ``check, value, oracle, residual, tolerance, passed, params,
seconds``.  ``seconds`` is omitted when timing is disabled, which makes
repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

__all__ = ["Check", "Report", "format_number"]

FIELDS = ("check", "value", "oracle", "residual", "tolerance", "passed", "params", "seconds")


def format_number(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return f"{x.real:.15g}"
        return f"{x.real:.15g}{x.imag:+.15g}j"
    if isinstance(x, float):
        return f"{x:.6e}" if x and (abs(x) < 1e-4 or abs(x) >= 1e6) else f"{x:.15g}"
    return str(x)


@dataclass
class Check:
    name: str
    value: Any = None
    oracle: Any = None
    residual: float | None = None
    tolerance: float | None = None
    params: dict[str, Any] = field(default_factory=dict)
    seconds: float | None = None
    passed: bool | None = None

    def __post_init__(self) -> None:
        if self.passed is None:
            if self.residual is None or self.tolerance is None:
                self.passed = True
            else:
                self.passed = bool(self.residual <= self.tolerance)

    def as_dict(self, timing: bool) -> dict[str, str]:
        row = {
            "check": self.name,
            "value": format_number(self.value),
            "oracle": format_number(self.oracle),
            "residual": format_number(self.residual),
            "tolerance": format_number(self.tolerance),
            "passed": format_number(self.passed),
            "params": " ".join(f"{k}={format_number(v)}" for k, v in sorted(self.params.items())),
        }
        if timing:
            row["seconds"] = f"{self.seconds:.3f}" if self.seconds is not None else ""
        return row


@dataclass
class Report:
    command: str
    header: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    info: list[tuple[str, str]] = field(default_factory=list)
    timing: bool = True

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def note(self, key: str, value: Any) -> None:
        self.info.append((key, format_number(value)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def _header(self) -> dict[str, str]:
        return {"command": self.command, **{k: format_number(v) for k, v in self.header.items()}}

    def render(self, fmt: str = "table") -> str:
        rows = [c.as_dict(self.timing) for c in self.checks]
        cols = [f for f in FIELDS if f != "seconds" or self.timing]
        if fmt == "json":
            payload = {"header": self._header(), "info": dict(self.info), "rows": rows, "passed": self.passed}
            return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            for k, v in list(self._header().items()) + self.info:
                buf.write(f"# {k}: {v}\n")
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            return buf.getvalue()
        if fmt != "table":
            raise ValueError(f"unknown format {fmt!r}")
        out = [f"# {k}: {v}" for k, v in self._header().items()]
        out += [f"{k}: {v}" for k, v in self.info]
        if rows:
            widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in cols}
            out.append("  ".join(c.ljust(widths[c]) for c in cols).rstrip())
            out.append("  ".join("-" * widths[c] for c in cols))
            for r in rows:
                out.append("  ".join(r[c].ljust(widths[c]) for c in cols).rstrip())
            out.append(f"result: {'PASS' if self.passed else 'FAIL'} ({len(rows) - len(self.failing)}/{len(rows)})")
        return "\n".join(out) + "\n"
