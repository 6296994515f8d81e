import json
import subprocess
import sys

import numpy as np
import pytest

from mocktheta import cli
from mocktheta.tenth import FormVector, mock_theta_value
from mocktheta.special import q_pow


@pytest.mark.parametrize(
    "text, value",
    [
        ("0.1+0.8i", 0.1 + 0.8j),
        ("1.3i", 1.3j),
        ("i", 1j),
        ("-i", -1j),
        ("-0.2-0.5i", -0.2 - 0.5j),
        ("3.14159", 3.14159),
        ("0+1.0i", 1j),
        ("2+i", 2 + 1j),
        (".5e1-2j", 5 - 2j),
    ],
)
def test_parse_complex(text, value):
    assert cli.parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+", "1+2", "i1", "1..2i"])
def test_parse_complex_rejects(text):
    with pytest.raises(cli.UsageError):
        cli.parse_complex(text)


def test_eval_phi(capsys):
    assert cli.main(["eval", "--fn", "phi", "--tau", "0+1.0i", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    want = mock_theta_value("phi", q_pow(1j, 1))
    assert complex(*d["value"]) == pytest.approx(want, abs=1e-14)


def test_eval_F1_json(capsys):
    assert cli.main(["eval", "--fn", "F1", "--tau", "0.1+0.8i", "--format", "json"]) == 0
    v = FormVector.from_json(capsys.readouterr().out)
    assert v.entries.shape == (6,)
    assert v.tau == 0.1 + 0.8j


def test_eval_J1(capsys):
    assert cli.main(["eval", "--vector", "J1", "--beta", "3.14159+0i", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()[1:]
    vals = np.array([[float(x) for x in r.split(",")[1:]] for r in rows])
    assert vals.shape == (6, 2)
    assert np.all(np.abs(vals[:, 1]) < 1e-14)
    assert vals[0, 0] < 0 and vals[1, 0] < 0


def test_eval_writes_file(tmp_path):
    out = tmp_path / "h.json"
    assert cli.main(["eval", "--fn", "H2", "--tau", "0.2+1.1i", "--format", "json", "--out", str(out)]) == 0
    assert FormVector.from_json(out.read_text()).family.value == "F2"


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--fn", "F1", "--tau", "0.1-0.8i"],
        ["eval", "--fn", "F1", "--tau", "garbage"],
        ["eval", "--fn", "F1"],
        ["eval", "--fn", "J1"],
        ["eval", "--fn", "J1", "--beta", "-1"],
        ["eval", "--fn", "omega", "--tau", "i"],
        ["coeffs", "--fn", "F1", "--order", "3"],
        ["coeffs", "--fn", "phi"],
        ["coeffs", "--fn", "phi", "--order", "0"],
        ["verify", "--suite", "bogus"],
        ["verify", "--points", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == cli.EXIT_USAGE


def test_nonconvergence_exit(monkeypatch):
    monkeypatch.setenv("MOCKTHETA_MAX_BOX", "8")
    assert cli.main(["eval", "--fn", "H1", "--tau", "0.3+0.05i"]) == cli.EXIT_NONCONV


@pytest.mark.parametrize(
    "fn, order, text",
    [
        ("chi", 5, "q - q^2 + q^3 - 2*q^4 + O(q^5)"),
        ("theta2", 2, "2*q^1/8 + 2*q^9/8 + O(q^2)"),
        ("phi", 1, "1 + O(q^1)"),
    ],
)
def test_coeffs_text(fn, order, text, capsys):
    assert cli.main(["coeffs", "--fn", fn, "--order", str(order)]) == 0
    assert capsys.readouterr().out.strip() == text


def test_coeffs_json(capsys):
    assert cli.main(["coeffs", "--fn", "chi", "--order", "5", "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["terms"] == [["1", "1"], ["2", "-1"], ["3", "1"], ["4", "-2"]]


def test_verify_choi(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "choi_exact", "--order", "50", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "runtime" in text
    d = json.loads(out.read_text())
    assert d["pass"] is True and d["suites"][0]["id"] == "choi_exact"


def test_verify_floor_demo(capsys):
    code = cli.main(["verify", "--suite", "theorem1_S", "--points", "2", "--tol", "1e-17"])
    assert code == cli.EXIT_FAIL
    assert "FAIL" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "mocktheta", "coeffs", "--fn", "theta3", "--order", "3"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout.strip() == "1 + 2*q^1/2 + 2*q^2 + O(q^3)"
