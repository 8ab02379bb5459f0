import json
import subprocess
import sys

import pytest

from qhopf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "tensors" in out.split() and "gauge.inst" in out.split()


def test_verify_tensors(capsys):
    code, out, _ = run(capsys, "verify", "tensors")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == 1 and rep["ok"]
    (suite,) = rep["suites"]
    assert suite["passed"] >= 8 and suite["failed"] == suite["errors"] == 0
    assert all(c["status"] == "pass" for c in suite["checks"])


def test_verify_numeric(capsys):
    code, out, _ = run(capsys, "verify", "gauge.inst", "--q-numeric", "7/5")
    rep = json.loads(out)
    assert code == 0
    assert rep["q_numeric"] == "7/5" and rep["numeric_agrees"]
    for c in rep["suites"][0]["checks"]:
        assert c["numeric"]["status"] == "pass"


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nosuch")
    assert code == 2
    assert "UnknownSuite" in err


@pytest.mark.parametrize("argv", [["verify"], ["verify", "tensors", "--order", "11,12"],
                                  ["verify", "tensors", "--variant", "odd"], ["bogus"],
                                  ["eval", "q"], ["verify", "tensors", "--jobs", "0"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "x[2,1]*x[1,1]")
    assert code == 0 and out.strip() == "q^-1 * x[1,1]*x[2,1]"
    assert run(capsys, "nf", "theta*theta")[1].strip() == "0"
    assert run(capsys, "nf", "U*Uinv")[1].strip() == "1"


def test_nf_syntax_error(capsys):
    code, _, err = run(capsys, "nf", "x[1,1]**")
    assert code == 2
    assert "column 8" in err


def test_eval(capsys):
    assert run(capsys, "eval", "(q-1)*(q-q^-2)", "--q", "1")[1].strip() == "0"
    assert run(capsys, "eval", "q + q^-1", "--q", "2")[1].strip() == "5/2"
    code, out, _ = run(capsys, "eval", "absx^2*rho^2/((absx^2+rho^2)*(q^2*absx^2+rho^2))",
                       "--q", "2", "--u", "1", "--p", "1")
    assert code == 0 and out.strip() == "1/10"


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "x[1,1]", "--q", "2")
    assert code == 1
    assert run(capsys, "eval", "Uinv", "--q", "2", "--u", "0")[0] == 1


def test_config_files(tmp_path, capsys):
    toml = tmp_path / "run.toml"
    toml.write_text('suites = ["sun.T"]\norder = ["11", "12", "21", "22"]\nvariant = "hat"\n')
    code, out, _ = run(capsys, "verify", "--config", str(toml))
    rep = json.loads(out)
    assert code == 0
    assert rep["config"]["order"] == [0, 1, 2, 3] and rep["config"]["variant"] == "hat"
    js = tmp_path / "run.json"
    js.write_text(json.dumps({"suites": ["sun.T"], "nonsense": 1}))
    assert run(capsys, "verify", "--config", str(js))[0] == 2
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.toml"))[0] == 2


def test_report_is_deterministic(capsys):
    a = json.loads(run(capsys, "verify", "forms.theta", "sun.T")[1])
    b = json.loads(run(capsys, "verify", "forms.theta", "sun.T")[1])
    a.pop("timings"), b.pop("timings")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_dump_dir(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", "sun.T", "--dump-dir", str(tmp_path), "--q-numeric", "3/2")
    assert code == 0
    data = json.loads((tmp_path / "sun.T" / "standard.json").read_text())
    assert data["exact"]["ok"] and data["numeric"]["ok"]


def test_jobs_match_serial(capsys):
    a = json.loads(run(capsys, "verify", "sun", "--jobs", "2")[1])
    b = json.loads(run(capsys, "verify", "sun")[1])
    assert a["digest"] == b["digest"]


def test_failure_exit_code(monkeypatch, capsys):
    from qhopf import suites

    monkeypatch.setitem(suites.SUITES, "tensors", lambda ctx: [("broken", lambda: {"ok": False})])
    code, out, _ = run(capsys, "verify", "tensors")
    assert code == 1
    assert json.loads(out)["suites"][0]["checks"][0]["status"] == "fail"


def test_error_status(monkeypatch, capsys):
    from qhopf import suites

    def boom():
        raise RuntimeError("boom")

    monkeypatch.setitem(suites.SUITES, "tensors", lambda ctx: [("raises", boom)])
    code, out, _ = run(capsys, "verify", "tensors")
    assert code == 1
    check = json.loads(out)["suites"][0]["checks"][0]
    assert check["status"] == "error" and "boom" in check["residual"]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "qhopf.cli", "verify", "nosuch"], capture_output=True, text=True)
    assert r.returncode == 2
