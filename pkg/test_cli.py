#!/usr/bin/env python3
"""
Command-line tests: output text, exit codes and file round trips
"""

import io
import json

import pytest

from cli import build_parser, run
from output_formatter import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE

TWISTED_CUBIC = "ring: x1 x2 x3 x4\nx1*x3 - x2^2\nx2*x4 - x3^2\nx1*x4 - x2*x3\n"


def _run(argv, stdin_text=None):
    out = io.StringIO()
    stdin = io.StringIO(stdin_text) if stdin_text is not None else None
    code = run(argv, stdout=out, stdin=stdin)
    return code, out.getvalue()


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return str(path)


def test_construct_prints_ideal_file():
    code, out = _run(["construct", "--family", "Skeleton", "--n", "2", "--p", "0"])
    assert code == EXIT_PASS
    lines = out.splitlines()
    assert lines[0].startswith("# family=Skeleton n=2 p=0")
    assert lines[1:] == ["ring: x0 x1 x2", "x1^2 - x0^2", "x2^2 - x0^2"]


def test_construct_json():
    code, out = _run(["construct", "--family", "KL", "--n", "3", "--p", "1", "--json"])
    assert code == EXIT_PASS
    payload = json.loads(out)
    assert payload['data']['generators'] == ["x1 - x2", "x1 - x3", "x2 - x3"]
    assert payload['exit_code'] == 0


def test_construct_gb_member_round_trip(tmp_path):
    _, text = _run(["construct", "--family", "Skeleton", "--n", "3", "--p", "1"])
    ideal = _write(tmp_path, "skeleton.ideal", text)
    code, basis_text = _run(["gb", "--ideal", ideal, "--order", "lex"])
    assert code == EXIT_PASS
    assert "ring: x0 x1 x2 x3" in basis_text
    basis = _write(tmp_path, "basis.ideal", basis_text)
    code, out = _run(["member", "--ideal", basis, "--poly", "(x1^2 - x0^2)*(x2^2 - x0^2)*x3"])
    assert code == EXIT_PASS
    code, out = _run(["member", "--ideal", basis, "--poly", "x1^2 - x0^2", "--json"])
    assert code == EXIT_FAIL
    payload = json.loads(out)
    assert payload['checks'][0]['witness'] == payload['data']['normal_form']


def test_gb_reads_stdin():
    code, out = _run(["gb", "--ideal", "-"], "ring: x y\nx^2 - y\nx*y - 1\n")
    assert code == EXIT_PASS
    lines = out.splitlines()
    assert "ring: x y" in lines
    assert len(lines) >= 3


def test_intersect(tmp_path):
    first = _write(tmp_path, "a.ideal", "ring: x1 x2 x3\nx1\n")
    second = _write(tmp_path, "b.ideal", "ring: x1 x2 x3\nx2\n")
    code, out = _run(["intersect", first, second])
    assert code == EXIT_PASS
    assert out.splitlines()[-1] == "x1*x2"


def test_hilbert_json(tmp_path):
    ideal = _write(tmp_path, "cubic.ideal", TWISTED_CUBIC)
    code, out = _run(["hilbert", "--ideal", ideal, "--degree", "4", "--json"])
    assert code == EXIT_PASS
    data = json.loads(out)['data']
    assert (data['dim'], data['degree']) == (2, 3)
    assert data['values'] == [1, 4, 7, 10, 13]


def test_betti_json(tmp_path):
    ideal = _write(tmp_path, "cubic.ideal", TWISTED_CUBIC)
    code, out = _run(["betti", "--ideal", ideal, "--json"])
    assert code == EXIT_PASS
    data = json.loads(out)['data']
    assert data['entries'] == [{'i': 0, 'j': 2, 'rank': 3}, {'i': 1, 'j': 3, 'rank': 2}]
    assert data['pure_type'] == [2, 3]


@pytest.mark.parametrize("argv", [
    [],
    ["construct", "--family", "LiLi"],
    ["construct", "--family", "Braid", "--n", "3", "--p", "2"],
    ["construct", "--family", "LiLi", "--n", "3", "--p", "1"],
    ["frobnicate"],
    ["dodeca", "--method", "resultant"],
])
def test_usage_errors(argv):
    code, out = _run(argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_bad_order_and_missing_file(tmp_path):
    ideal = _write(tmp_path, "cubic.ideal", TWISTED_CUBIC)
    assert _run(["gb", "--ideal", ideal, "--order", "revlex"])[0] == EXIT_USAGE
    assert _run(["gb", "--ideal", str(tmp_path / "missing.ideal")])[0] == EXIT_USAGE
    bad = _write(tmp_path, "bad.ideal", "ring: x1 x2\nx1 + x3\n")
    assert _run(["gb", "--ideal", bad])[0] == EXIT_USAGE


def test_budget_exit_code(tmp_path):
    ideal = _write(tmp_path, "cubic.ideal", TWISTED_CUBIC)
    assert _run(["gb", "--ideal", ideal, "--order", "lex", "--budget", "0"])[0] == EXIT_BUDGET
    code, out = _run(["verify-family", "--family", "LiLi", "--n", "3", "--p", "2", "--budget", "0"])
    assert code == EXIT_BUDGET
    assert "BUDGET EXCEEDED" in out


def test_verify_family_skeleton_includes_invariants():
    code, out = _run(["verify-family", "--family", "Skeleton", "--n", "2", "--p", "0", "--json"])
    assert code == EXIT_PASS
    names = [c['name'] for c in json.loads(out)['checks']]
    assert "invariants:pure-type" in names
    assert "oracle-equality" in names
    assert "choice-ideal-identity" in names
    payload = json.loads(out)
    assert payload['data']['sample_orders'] == {'count': 20, 'seed': 0}
    assert sum(name.startswith("groebner[") for name in names) == 22


def test_verify_examples():
    assert _run(["verify-trunc-example"])[0] == EXIT_PASS
    assert _run(["verify-cube-example"])[0] == EXIT_PASS


def test_save_writes_reports(tmp_path):
    code, _ = _run(["verify-family", "--family", "KL", "--n", "3", "--p", "1", "--save", str(tmp_path / "out")])
    assert code == EXIT_PASS
    saved = sorted(p.suffix for p in (tmp_path / "out").iterdir())
    assert saved == [".json", ".txt"]


def test_parser_defaults():
    args = build_parser().parse_args(["verify-family", "--family", "KL", "--n", "3", "--p", "1"])
    assert args.m == 1
    assert args.sample_orders == 20
    assert args.order is None
