import json
import subprocess
import sys

import pytest

from prymlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_k_of_tau(capsys):
    code, out = run(capsys, "k-of-tau", "--tau", "0,1")
    data = json.loads(out)
    assert code == 0
    assert abs(data["k"][0] + 2) < 1e-9 and abs(data["k"][1]) < 1e-9


def test_classify_orbits(capsys):
    code, out = run(capsys, "classify-orbits", "--genus", "2")
    data = json.loads(out)
    assert code == 0
    assert [len(c) for c in data["cosets"]] == [4, 4, 4]
    assert data["solutions"] == 12


def test_curve_from_k(capsys):
    code, out = run(capsys, "curve-from-k", "--k=-2.5,0")
    data = json.loads(out)
    assert code == 0
    assert data["lambda"] == [-2.0, 0.0]
    assert data["p1"] == [[0.0, 0.0], [0.0, 0.0]]


def test_theta_eval(capsys):
    code, out = run(capsys, "theta-eval", "--char", "0/0", "--tau", "0,1")
    assert code == 0
    assert abs(json.loads(out)["value"][0] - 1.0864348112133082) < 1e-12
    code, out = run(capsys, "theta-eval", "--char", "2:10/01", "--tau", "0,1;0.1,0|0.1,0;0,1.5",
                    "--z", "0.1,0;0.2,0.1", "--eps", "1e-10")
    assert code == 0 and json.loads(out)["eps"] == 1e-10


def test_roundtrip_fixture(capsys):
    code, out = run(capsys, "roundtrip-hyperelliptic", "--genus", "3", "--seed", "7", "--runs", "5",
                    "--no-timings")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["matches"] == 5
    assert all(r["branch"]["B1"] and isinstance(r["branch"]["B1"][0], str) for r in data["runs"])


def test_roundtrip_byte_identical(capsys):
    argv = ("roundtrip-hyperelliptic", "--genus", "2", "--seed", "3", "--runs", "2", "--no-timings")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("argv,code", [
    (("curve-from-k", "--k", "2"), 1),
    (("k-of-tau", "--tau=0,-1"), 1),
    (("theta-eval", "--char", "00/00", "--tau", "0,1"), 1),
    (("classify-orbits", "--genus", "9"), 1),
    (("roundtrip-hyperelliptic", "--genus", "7"), 1),
    (("k-of-tau", "--tau", "abc"), 1),
    (("bogus",), 2),
    (("k-of-tau",), 2),
    ((), 2),
])
def test_errors_are_json(capsys, argv, code):
    got, out = run(capsys, *argv)
    assert got == code
    data = json.loads(out)
    assert set(data["error"]) == {"type", "message"}
    if code == 2:
        assert "usage" in data


def test_env_eps(capsys, monkeypatch):
    monkeypatch.setenv("PRYM_LAB_EPS", "1e-4")
    _, out = run(capsys, "theta-eval", "--char", "1/0", "--tau", "0,1")
    assert json.loads(out)["eps"] == 1e-4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prymlab", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout
    data = json.loads(proc.stdout)
    assert data["passed"] == data["total"]
    again = subprocess.run([sys.executable, "-m", "prymlab", "selftest"], capture_output=True, text=True)
    assert again.stdout == proc.stdout
