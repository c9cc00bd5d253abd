#!/usr/bin/env python3
"""
Tests for reports, their renderings, ideal files and error bookkeeping
"""

import json

import pytest

from data_parser import IdealFileParser, dump_ideal, load_ideal_file, parse_ideal_text
from error_handler import (
    HISTORY_LIMIT,
    AlgebraErrorHandler,
    BudgetExceededError,
    IdealFileError,
    InvalidSpecError,
)
from output_formatter import (
    EXIT_BUDGET,
    EXIT_FAIL,
    EXIT_PASS,
    FAIL,
    PASS,
    SKIPPED,
    ReportFormatter,
    VerificationReport,
)
from performance_monitor import PerformanceMonitor
from polyring import VarRing


def _report():
    report = VerificationReport("LiLi n=3 p=2 m=1")
    report.add("generator-degrees", True, detail="[3]")
    report.add("oracle-equality", False, witness="x1 - x2")
    report.data['components'] = 3
    report.data['betti'] = "       0\ntotal: 1\n    3: 1"
    return report


def test_report_status_and_exit_codes():
    report = _report()
    assert [c.status for c in report.checks] == [PASS, FAIL]
    assert report.counts() == {PASS: 1, FAIL: 1, SKIPPED: 0}
    assert report.exit_code == EXIT_FAIL
    clean = VerificationReport("empty")
    clean.add("ok", True)
    assert clean.exit_code == EXIT_PASS
    clean.budget("slow-check", "step budget of 10 reductions exhausted")
    assert clean.passed and clean.exit_code == EXIT_BUDGET
    assert clean.to_dict()['status'] == SKIPPED


def test_merge_prefixes_names():
    outer = VerificationReport("outer")
    inner = VerificationReport("inner")
    inner.add("pure-type", True)
    inner.budget("transport", "exhausted")
    inner.data['table'] = "(zero table)"
    inner.timings['betti'] = 0.5
    outer.merge(inner, prefix="invariants")
    assert [c.name for c in outer.checks] == ["invariants:pure-type", "invariants:transport"]
    assert outer.data['invariants'] == {'table': "(zero table)"}
    assert outer.timings == {'invariants:betti': 0.5}
    assert outer.budget_exceeded


def test_console_output():
    text = ReportFormatter().format_console_output(_report())
    assert "VERIFICATION REPORT: LiLi n=3 p=2 m=1" in text
    assert "[PASS   ] generator-degrees  ([3])" in text
    assert "witness: x1 - x2" in text
    assert "    3: 1" in text
    assert "Result: FAIL (1 passed, 1 failed, 0 skipped)" in text


def test_json_output_and_files(tmp_path):
    formatter = ReportFormatter(str(tmp_path))
    payload = json.loads(formatter.format_json(_report(), include_timings=False))
    assert payload['exit_code'] == EXIT_FAIL
    assert payload['checks'][1] == {'name': 'oracle-equality', 'status': FAIL, 'witness': 'x1 - x2'}
    assert 'timings' not in payload
    paths = formatter.save_all_formats(_report())
    assert paths['json'].endswith(".json") and paths['text'].endswith(".txt")
    assert json.loads(open(paths['json'], encoding='utf-8').read())['subject'] == "LiLi n=3 p=2 m=1"


def test_ideal_file_parsing():
    ideal = parse_ideal_text("# twisted cubic\nring: x1 x2 x3 x4\n\nx1*x3 - x2^2  # first\nx2*x4 - x3^2\n")
    assert ideal.ring == VarRing.standard(4)
    assert [str(g) for g in ideal.gens] == ["-x2^2 + x1*x3", "-x3^2 + x2*x4"]


def test_ideal_file_errors():
    with pytest.raises(IdealFileError) as excinfo:
        IdealFileParser("a.ideal").parse_text("x1 + x2\n")
    assert "a.ideal:1" in str(excinfo.value)
    with pytest.raises(IdealFileError) as excinfo:
        parse_ideal_text("ring: x1\nx1 +\n", "b.ideal")
    assert "b.ideal:2" in str(excinfo.value)
    with pytest.raises(IdealFileError):
        parse_ideal_text("# nothing\n")
    with pytest.raises(IdealFileError):
        parse_ideal_text("ring: x1 x1\n")


def test_dump_and_load(tmp_path):
    ring = VarRing.standard(2, with_x0=True)
    polys = [ring.parse("x1^2 - x0^2"), ring.parse("1/2*x1*x2")]
    text = dump_ideal(ring, polys, ["two generators"])
    assert text == "# two generators\nring: x0 x1 x2\nx1^2 - x0^2\n1/2*x1*x2\n"
    path = tmp_path / "two.ideal"
    path.write_text(text, encoding='utf-8')
    assert list(load_ideal_file(path).gens) == polys
    with pytest.raises(IdealFileError):
        load_ideal_file(tmp_path / "absent.ideal")


def test_error_handler_bookkeeping():
    handler = AlgebraErrorHandler(log_level="WARNING", file_logging=False)

    @handler.error_handler("validate")
    def validate():
        raise InvalidSpecError("n must be at least 1")

    @handler.performance_monitor("square")
    def square(x):
        return x * x

    with pytest.raises(InvalidSpecError):
        validate()
    assert square(7) == 49
    summary = handler.generate_error_report()
    assert summary['error_summary']['error_types'] == {'InvalidSpecError': 1}
    assert summary['recent_errors'][0]['context'] == "validate"
    assert summary['performance_summary']['call_counts'] == {'square': 1}


def test_error_handler_bookkeeping_is_bounded():
    handler = AlgebraErrorHandler(log_level="WARNING", file_logging=False)

    @handler.performance_monitor("square")
    def square(x):
        return x * x

    for k in range(HISTORY_LIMIT + 50):
        handler.log_error(InvalidSpecError(f"bad n={k}"), "validate")
        square(k)
    assert len(handler.error_history) == HISTORY_LIMIT
    assert handler.error_history[-1]['error_message'] == f"bad n={HISTORY_LIMIT + 49}"
    summary = handler.generate_error_report()
    assert summary['error_summary']['total_errors'] == HISTORY_LIMIT + 50
    assert summary['performance_summary']['call_counts'] == {'square': HISTORY_LIMIT + 50}
    assert isinstance(handler.operation_times['square'], float)
    assert len(summary['recent_errors']) == 10


def test_budget_error_keeps_partial_result():
    error = BudgetExceededError("out of steps", partial="fold so far", steps=12)
    assert error.partial == "fold so far"
    assert error.steps == 12


def test_performance_monitor_phases():
    monitor = PerformanceMonitor()
    with monitor.phase("betti"):
        pass
    with monitor.phase("betti"):
        pass
    with monitor.phase("euler"):
        pass
    summary = monitor.summary()
    assert list(summary) == ["betti", "euler", "total"]
    assert all(v >= 0 for v in summary.values())
    memory = monitor.memory_summary()
    assert list(memory) == ["betti", "euler"]
    assert all(v > 0 for v in memory.values())
    assert PerformanceMonitor.format_duration(75) == "1m 15.0s"
