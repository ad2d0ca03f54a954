from __future__ import annotations

import json
import subprocess
import sys

import pytest

from nichols_knots import cli
from nichols_knots.invariants import CheckReport
from nichols_knots.polyring import parse


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lambda_uv_form(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "3_1", "--invariant", "lambda", "--N", "2",
                       "--form", "uv")
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("3_1 lambda 2 (uv): ")
    assert parse(first.split(": ", 1)[1]) == parse("1 + 4u + u^2 + v")


def test_inline_braid_gives_alexander(capsys):
    code, out, _ = run(capsys, "compute", "--braid", "1 1 1", "--width", "2", "--invariant", "ado",
                       "--N", "2", "--out", "json")
    assert code == 0
    data = json.loads(out)
    assert data["invariant"] == "ado" and data["params"] == {"N": 2}
    assert parse(data["text"]) == parse("t - 1 + t^-1")


def test_uq_form_json(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "m3_1", "--invariant", "vn", "--n", "2",
                       "--form", "uq", "--out", "json")
    assert code == 0
    data = json.loads(out)
    assert parse(data["form"]["text"]) == parse("1 + (q + 2q^3 - q^4 + q^5 - q^6)u + (q^2 + q^4 - q^5)u^2")


def test_full_matrix_and_symbolic_gauge(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "4_1", "--invariant", "jones", "--n", "2",
                       "--full-matrix", "--symbolic-gauge")
    assert code == 0
    assert "FAIL" not in out and "PASS" in out


@pytest.mark.parametrize("argv", [
    ("compute", "--knot", "no_such", "--invariant", "ado", "--N", "2"),
    ("compute", "--knot", "3_1", "--invariant", "ado", "--N", "2", "--form", "uv"),
    ("compute", "--braid", "1 x", "--invariant", "ado", "--N", "2"),
    ("compute", "--knot", "3_1", "--invariant", "ado", "--N", "0"),
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "--knot", "3_1", "--braid", "1", "--invariant", "ado", "--N", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--suite", "nope"])


def _fake_suite(ok):
    def run_suite(name):
        rep = CheckReport(f"fake_{name}")
        rep.record("item", ok, "" if ok else "mismatch")
        return [rep]
    return run_suite


@pytest.mark.parametrize("ok,code", [(True, 0), (False, 1)])
def test_verify_exit_status(monkeypatch, capsys, ok, code):
    import nichols_knots.verify as verify
    monkeypatch.setattr(verify, "run_suite", _fake_suite(ok))
    rc, out, _ = run(capsys, "verify", "--suite", "paper")
    assert rc == code
    assert ("FAIL" in out) == (not ok)
    assert out.strip().endswith(f"{int(ok)}/1 checks passed")


def test_verify_json(monkeypatch, capsys):
    import nichols_knots.verify as verify
    monkeypatch.setattr(verify, "run_suite", _fake_suite(True))
    rc, out, _ = run(capsys, "verify", "--suite", "axioms", "--out", "json")
    data = json.loads(out)
    assert rc == 0 and data["failed"] == 0 and data["reports"][0]["name"] == "fake_identities"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nichols_knots", "compute", "--knot", "unknot",
                           "--invariant", "jones", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].endswith(": 1")
