"""
Test Report Writer

Text, json and csv rendering of reports, tables and series, and file output.
"""

import sys
import os
import json
from fractions import Fraction

# Add src to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from src.identities.registry import JET, SERIES
from src.identities.verifier import Failure, VerifyReport
from src.series.qseries import AnalyticSeries, QSeries
from src.utils.report_writer import ReportWriter


def sample_reports():
    return [
        VerifyReport("good", SERIES, 30, True, elapsed_ms=12.5),
        VerifyReport("bad", JET, Fraction(41, 2), False, Failure(Fraction(3, 2), "4", "5", z_order=2)),
        VerifyReport("broken", SERIES, 30, False, error="EvalError: division by zero constant"),
    ]


def test_reports_text():
    text = ReportWriter("text").render_reports(sample_reports())
    lines = text.splitlines()
    assert lines[0] == "PASS  good (order 30)"
    assert lines[1] == "FAIL  bad (order 41/2): first divergence at z^2 q^3/2: 4 != 5"
    assert lines[2] == "ERROR broken (order 30): EvalError: division by zero constant"
    assert lines[3] == "1/3 passed"


def test_reports_json_is_deterministic():
    writer = ReportWriter("json")
    first = writer.render_reports(sample_reports())
    payload = json.loads(first)
    assert payload[0] == {"name": "good", "order": {"num": 30, "den": 1}, "pass": True,
                          "first_failure": None, "error": None}
    assert payload[1]["first_failure"] == {"exp_num": 3, "exp_den": 2, "z_order": 2, "lhs": "4", "rhs": "5"}
    assert "elapsed" not in first
    # timing differs run to run but never reaches the report
    again = sample_reports()
    again[0].elapsed_ms = 99.0
    assert writer.render_reports(again) == first


def test_reports_csv():
    lines = ReportWriter("csv").render_reports(sample_reports()).splitlines()
    assert lines[0] == "name,order,status,exponent,z_order,lhs,rhs,error"
    assert lines[1] == "good,30,pass,,,,,"
    assert lines[2] == "bad,41/2,fail,3/2,2,4,5,"


def test_table_text_alignment():
    text = ReportWriter("text").render_table(["n", "count"], [(1, 8), (10, 144)], title="S_4")
    lines = text.splitlines()
    assert lines[0] == "S_4"
    assert lines[1] == " n  count"
    assert lines[2] == " 1      8"
    assert lines[3] == "10    144"


def test_table_booleans():
    text = ReportWriter("text").render_table(["n", "match"], [(1, True), (2, False)])
    assert "ok" in text and "MISMATCH" in text
    payload = json.loads(ReportWriter("json").render_table(["n", "ratio"], [(1, Fraction(1, 2))]))
    assert payload == {"rows": [{"n": 1, "ratio": "1/2"}]}


def test_series_rendering():
    body = QSeries.from_coefficients([(Fraction(0), 1), (Fraction(1, 2), Fraction(-3, 4))], 2)
    series = AnalyticSeries(2, body)
    text = ReportWriter("text").render_series(series, "f", verdict="done")
    assert text.splitlines() == ["f  (valid below q^2)", "q^0: 1*pi^2", "q^1/2: (-3/4)*pi^2", "done"]
    payload = json.loads(ReportWriter("json").render_series(series, "f"))
    assert payload["pi_power"] == 2
    assert payload["terms"][1] == {"exp_num": 1, "exp_den": 2, "coeff": "-3/4"}
    assert "verdict" not in payload


def test_zero_series_text():
    text = ReportWriter("text").render_series(AnalyticSeries(0, QSeries.zero(3)))
    assert text.splitlines() == ["valid below q^3", "0"]


def test_emit_creates_parent_directories(tmp_path):
    target = tmp_path / "nested" / "out" / "report.json"
    writer = ReportWriter("json", str(target))
    writer.write_reports(sample_reports()[:1])
    assert json.loads(target.read_text(encoding="utf-8"))[0]["name"] == "good"


def test_unknown_format():
    with pytest.raises(ValueError):
        ReportWriter("xml")


if __name__ == "__main__":
    test_reports_text()
    test_reports_json_is_deterministic()
    test_table_text_alignment()
    print("✓ Report writer tests passed")
