"""
Report Writer

Renders verification reports, count tables and series expansions as text,
json or csv. Everything is exact: coefficients are rationals or zeta-basis
tuples, never floats.
"""

import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from src.series.qseries import AnalyticSeries, render_coefficient
from src.utils.config import get_config

FORMATS = ("text", "json", "csv")


class ReportWriter:
    def __init__(self, fmt: Optional[str] = None, out: Optional[str] = None):
        self.logger = logging.getLogger("ReportWriter")
        self.format = fmt or get_config("report.format", "text")
        if self.format not in FORMATS:
            raise ValueError(f"unknown report format {self.format!r}; choose from {', '.join(FORMATS)}")
        self.out = out if out is not None else get_config("report.out")

    # sinks

    def emit(self, text: str):
        if not text.endswith("\n"):
            text += "\n"
        if not self.out:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        parent = os.path.dirname(self.out)
        if parent and not os.path.exists(parent):
            os.makedirs(parent)
        with open(self.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        self.logger.info(f"Report written to: {self.out}")

    def _json(self, payload: Any) -> str:
        return json.dumps(payload, indent=2, sort_keys=False, ensure_ascii=False)

    def _csv(self, headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buffer.getvalue()

    # verification reports

    def render_reports(self, reports: List) -> str:
        if self.format == "json":
            return self._json([r.to_dict() for r in reports])
        if self.format == "csv":
            rows = []
            for r in reports:
                f = r.failure
                rows.append([r.name, str(r.order), "pass" if r.passed else "fail",
                             "" if f is None else str(f.exponent),
                             "" if f is None or f.z_order is None else f.z_order,
                             "" if f is None else f.lhs, "" if f is None else f.rhs, r.error or ""])
            return self._csv(["name", "order", "status", "exponent", "z_order", "lhs", "rhs", "error"], rows)
        lines = []
        for r in reports:
            if r.passed:
                lines.append(f"PASS  {r.name} (order {r.order})")
            elif r.error:
                lines.append(f"ERROR {r.name} (order {r.order}): {r.error}")
            else:
                f = r.failure
                where = f" z^{f.z_order}" if f.z_order is not None else ""
                lines.append(f"FAIL  {r.name} (order {r.order}): first divergence at{where} q^{f.exponent}: "
                             f"{f.lhs} != {f.rhs}")
        passed = sum(1 for r in reports if r.passed)
        lines.append(f"{passed}/{len(reports)} passed")
        return "\n".join(lines)

    def write_reports(self, reports: List):
        self.emit(self.render_reports(reports))

    # tables

    def render_table(self, headers: Sequence[str], rows: Sequence[Sequence[Any]],
                     title: Optional[str] = None) -> str:
        if self.format == "json":
            payload: Dict[str, Any] = {"rows": [dict(zip(headers, _plain(row))) for row in rows]}
            if title:
                payload = {"title": title, **payload}
            return self._json(payload)
        if self.format == "csv":
            return self._csv(headers, [_plain(row) for row in rows])
        cells = [[str(c) for c in headers]] + [[_cell(c) for c in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
        lines = [title] if title else []
        for row in cells:
            lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
        return "\n".join(lines)

    def write_table(self, headers: Sequence[str], rows: Sequence[Sequence[Any]], title: Optional[str] = None):
        self.emit(self.render_table(headers, rows, title))

    # series

    def render_series(self, series: AnalyticSeries, label: str = "", verdict: Optional[str] = None) -> str:
        terms = [(Fraction(n, series.grid), c) for n, c in sorted(series.body.terms.items())]
        valid = series.valid_to
        if self.format == "json":
            return self._json({
                "expr": label,
                "pi_power": series.pi_power,
                "valid_to": {"num": valid.numerator, "den": valid.denominator},
                "terms": [{"exp_num": e.numerator, "exp_den": e.denominator, "coeff": c.render()}
                          for e, c in terms],
                **({"verdict": verdict} if verdict else {}),
            })
        if self.format == "csv":
            return self._csv(["exponent", "coefficient", "pi_power"],
                             [[str(e), c.render(), series.pi_power] for e, c in terms])
        lines = [f"{label}  (valid below q^{valid})" if label else f"valid below q^{valid}"]
        for e, c in terms:
            lines.append(f"q^{e}: {render_coefficient(c, series.pi_power)}")
        if not terms:
            lines.append("0")
        if verdict:
            lines.append(verdict)
        return "\n".join(lines)

    def write_series(self, series: AnalyticSeries, label: str = "", verdict: Optional[str] = None):
        self.emit(self.render_series(series, label, verdict))


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "ok" if value else "MISMATCH"
    return str(value)


def _plain(row: Sequence[Any]) -> List[Any]:
    out = []
    for value in row:
        if isinstance(value, Fraction):
            out.append(str(value))
        else:
            out.append(value)
    return out
