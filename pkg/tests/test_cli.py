import json
import subprocess
import sys

import pytest

from symx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_apply(capsys):
    code, out, _ = run(capsys, "eval", "apply", "(perm (n:0 n:1) (n:1 n:0))", "(gen n:0)")
    assert (code, out) == (0, "(gen n:1)")


def test_support(capsys):
    assert run(capsys, "eval", "support", "(bullet (gen n:0) (gen n:1))")[:2] == (0, "{n:0, n:1}")
    code, out, _ = run(capsys, "eval", "support", "--ideal", "cuts", "(based (top 2) (pt q:0 1) (pt q:5 0))")
    assert (code, out) == (0, "(<= q:5)")


def test_compile_and_force(capsys):
    code, out, _ = run(capsys, "eval", "compile", "(gen n:0)", "--slots", "2")
    assert out == "(raw ((cond ((n:0 0) 1)) (check 0)) ((cond ((n:0 1) 1)) (check 1)))"
    code, out, _ = run(capsys, "eval", "force", "(elem (check 0) (gen n:0))", "(cond ((n:0 0) 1))")
    assert code == 0 and json.loads(out)["forces"] is True
    code, out, _ = run(capsys, "eval", "force", "(elem (check 0) (gen n:0))", "--format", "text")
    assert out == "false"


@pytest.mark.parametrize("argv", [
    ("eval", "apply", "(perm (n:0 n:1) (n:1 n:0))", "(gen n:0"),
    ("eval", "support", "(foo)"),
    ("run", "no-such-suite"),
    ("eval", "support", "(gen n:0)", "--bogus"),
    ("frobnicate",),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_run_passing_suite(capsys):
    code, out, _ = run(capsys, "run", "tenacity", "--cases", "10")
    report = json.loads(out.splitlines()[-1])
    assert code == 0 and report["kind"] == "report" and report["pass"]


def test_budget_overrun_exits_1(capsys):
    code, out, _ = run(capsys, "run", "symmetry-lemma", "--index-size", "3", "--slots", "3", "--budget", "100")
    report = json.loads(out.splitlines()[-1])
    assert code == 1 and not report["pass"]
    assert "budget_exceeded" in report["counterexamples"][0]


def test_run_text_format(capsys):
    code, out, _ = run(capsys, "run", "model2-codes", "--cases", "20", "--format", "text")
    assert code == 0 and out.startswith("model2-codes: PASS")


def test_input_file(tmp_path, capsys):
    f = tmp_path / "names.txt"
    f.write_text("(gen n:2)\n\n")
    assert run(capsys, "eval", "support", "--in", str(f))[:2] == (0, "{n:2}")


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "(bullet (gen n:0) (gen n:1))")
    doc = json.loads(out)
    assert code == 0 and doc["hs"]
    assert [c["support"] for c in doc["witness"]["children"]] == ["{n:0}", "{n:1}"]


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "symx.cli", "eval", "apply", "(pl (0 0) (1 2) (3 3))",
                          "(prec dlo)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "(prec dlo)"
