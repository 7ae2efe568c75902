from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from gradedlc.cli import main, run
from gradedlc import parallel

MIXED = ["--n", "3", "--ideal", "(x1*x2,x1*x3)", "--i", "2"]
SERIES1 = ["--n", "5", "--ideal", "V(x1,x2) & V(x3,x4) & V(x5,x1)", "--i", "3"]


def test_lc_table():
    code, out = run(["lc", *MIXED])
    assert code == 0
    assert out == "H^2:\n  {2,3}: 1\n  {1,2,3}: 1\n"


def test_lc_all_degrees():
    code, out = run(["lc", "--n", "2", "--ideal", "V(x1,x2)"])
    assert code == 0 and out.splitlines() == ["H^0: 0", "H^1: 0", "H^2:", "  {1,2}: 1"]


def test_invariants_text():
    code, out = run(["invariants", *MIXED])
    assert code == 0
    assert out.splitlines() == ["dim = 1", "injdim = 0", "ass = {(x2,x3)}", "cofinite: not-cofinite"]


def test_invariants_zero_module():
    code, out = run(["invariants", "--n", "2", "--ideal", "V(x1,x2)", "--i", "1"])
    assert code == 0 and out == "H^1 is zero\n"


def test_json_schema():
    code, out = run(["invariants", *MIXED, "--json"])
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == ["ring", "ideal", "command", "result", "citations", "timing"]
    assert doc["ring"] == {"n": 3, "char": 0}
    assert doc["ideal"] == "(x1*x2, x1*x3)"
    assert doc["result"]["dim"] == 1 and doc["result"]["injdim"] == 0
    assert doc["timing"] is None


def test_json_timing_opt_in():
    _, out = run(["cd", "--n", "2", "--ideal", "V(x1,x2)", "--json", "--timing"])
    assert isinstance(json.loads(out)["timing"], float)


def test_json_deterministic():
    a = run(["resolve", *SERIES1, "--json"])
    b = run(["resolve", *SERIES1, "--json"])
    assert a == b


def test_bass_and_resolve():
    _, out = run(["bass", *SERIES1])
    assert out.splitlines() == ["mu_0((x1,x2,x3,x4)) = 1", "mu_0((x1,x3,x4,x5)) = 1",
                                "mu_1((x1,x2,x3,x4,x5)) = 1"]
    _, out = run(["resolve", *SERIES1])
    assert out.strip() == ("0 → M → E(R/(x1,x2,x3,x4)) ⊕ E(R/(x1,x3,x4,x5)) → "
                           "E(R/(x1,x2,x3,x4,x5)) → 0")


def test_cofinite_report():
    code, out = run(["cofinite", *MIXED, "--json"])
    doc = json.loads(out)["result"]
    assert code == 0 and doc["verdict"] == "not-cofinite"
    assert doc["checked_levels"] == [{"level": 0, "finitely_generated": False, "witness": "(deep,-1,-1)"}]


def test_cofinite_max_level():
    args = ["cofinite", "--n", "3", "--ideal", "V(x2,x3)", "--i", "2", "--max-level", "1"]
    assert json.loads(run([*args, "--json"])[1])["result"]["verdict"] == "inconclusive"


def test_cd():
    _, out = run(["cd", "--n", "6", "--ideal", "V(x1,x2) & V(x3,x4) & V(x5,x6)"])
    assert out.splitlines()[0] == "cd = 4"


def test_mv_check():
    code, out = run(["mv-check", "--n", "3", "--ideal", "(x1)", "--ideal2", "V(x2,x3)", "--i", "2"])
    assert code == 0 and "exact: True" in out


def test_oracle_check(tmp_path):
    dump = tmp_path / "dump.txt"
    code, out = run(["oracle-check", *MIXED, "--box=-2..1", "--dump", str(dump)])
    assert code == 0 and out.strip() == "H^2: agree on 64 degrees"
    lines = dump.read_text().splitlines()
    assert len(lines) == 64 and lines[0] == "-2 -2 -2  1" and lines[-1] == "1 1 1  0"


def test_oracle_check_bad_box():
    code, out = run(["oracle-check", *MIXED, "--box", "wide"])
    assert code == 1 and out == ""


def test_verify_paper_mixed():
    code, out = run(["verify-paper", "mixed"])
    assert code == 0 and out.splitlines()[-1] == "PASS"


def test_verify_paper_json_citations():
    _, out = run(["verify-paper", "remark-fails", "--json"])
    doc = json.loads(out)
    assert doc["result"]["remark-fails"]["passed"]
    assert len(doc["citations"]) == len(doc["result"]["remark-fails"]["checks"])


def test_usage_errors(capsys):
    assert run(["lc", "--ideal", "(x1)"])[0] == 1
    assert run(["lc", "--n", "2", "--ideal", "(x1*x1)"])[0] == 1
    assert run(["lc", "--n", "2", "--ideal", "(x3)"])[0] == 1
    assert run(["lc", "--n", "2", "--ideal", "(x1)", "--char", "4"])[0] == 1
    assert run(["lc", "--n", "20", "--ideal", "(x1)"])[0] == 1
    assert run(["invariants", "--n", "2", "--ideal", "(x1)"])[0] == 1
    assert run(["mv-check", "--n", "2", "--ideal", "(0)", "--ideal2", "(x1)"])[0] == 1
    err = capsys.readouterr().err
    assert "squarefree only" in err and "--i is required" in err
    for argv in (["bogus"], [], ["verify-paper", "nope"], ["lc", "--n", "x"]):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 1


def test_main_writes_stdout(capsys):
    assert main(["cd", "--n", "2", "--ideal", "V(x1,x2)"]) == 0
    assert capsys.readouterr().out.startswith("cd = 2")


def test_worker_count(monkeypatch):
    monkeypatch.delenv("GRADEDLC_THREADS", raising=False)
    assert parallel.worker_count() == 1
    monkeypatch.setenv("GRADEDLC_THREADS", "0")
    assert parallel.worker_count() >= 1
    monkeypatch.setenv("GRADEDLC_THREADS", "-2")
    with pytest.raises(ValueError):
        parallel.worker_count()


def _cli(args, threads):
    env = dict(os.environ, GRADEDLC_THREADS=threads)
    return subprocess.run([sys.executable, "-m", "gradedlc", *args], env=env,
                          capture_output=True, check=True).stdout


def test_json_identical_across_parallelism():
    args = ["invariants", *SERIES1, "--json"]
    assert _cli(args, "1") == _cli(args, "2")
