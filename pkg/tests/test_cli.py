import json
import os
import subprocess
import sys

import pytest

from coxwalk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stationary(capsys):
    code, out, _ = run(capsys, "stationary", "--type", "A2")
    assert code == 0
    data = json.loads(out)
    assert [z["value"] for z in data["zeta"]] == ["2/9", "1/9", "1/9",
                                                  "2/9", "2/9", "1/9"]


def test_psi(capsys):
    code, out, _ = run(capsys, "psi", "--type", "A3")
    data = json.loads(out)
    assert code == 0 and data["psi"]["coords"] == [3, 4, 3]
    assert data["radial_speed_squared"] == "1/20"


def test_chambers_with_probes(capsys):
    code, out, _ = run(capsys, "chambers", "--type", "A2", "--probes")
    data = json.loads(out)
    assert code == 0
    assert sorted(c["value"] for c in data["chambers"]) == ["1/9"] * 3 + ["2/9"] * 3
    assert data["probes"]["binomial_product"] == 9


def test_shi(capsys):
    code, out, _ = run(capsys, "shi", "--type", "A2", "--regions")
    regions = json.loads(out)["regions"]
    assert code == 0 and len(regions) == 16
    code, out, _ = run(capsys, "shi", "--type", "B2")
    data = json.loads(out)
    assert data["vertices"] == 83
    assert sum(1 for a in data["absorption"]) == 8


def test_cores(capsys, tmp_path):
    code, out, _ = run(capsys, "cores", "--n", "4", "--steps", "0")
    assert code == 0 and json.loads(out)["rows"] == []
    code, out, _ = run(capsys, "cores", "--n", "3", "--steps", "30",
                       "--format", "csv")
    assert code == 0 and out.startswith("x,y\n")
    target = tmp_path / "core.svg"
    code, out, _ = run(capsys, "cores", "--n", "4", "--steps", "50",
                       "--format", "svg", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("<svg")


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", "--type", "B2", "--steps", "12",
                       "--seed", "3")
    data = json.loads(out)
    assert code == 0 and len(data["word"]) == 12
    code, out, _ = run(capsys, "simulate", "--type", "A2", "--steps", "5",
                       "--format", "csv")
    assert out.splitlines()[0] == "step,word,lambda1,lambda2,length"
    code, out, _ = run(capsys, "simulate", "--type", "A2", "--steps", "40",
                       "--trials", "500", "--threads", "2")
    data = json.loads(out)
    total = sum(c["frequency"] for c in data["chambers"]) + data["undecided"]
    assert code == 0 and total == pytest.approx(1.0)


@pytest.mark.parametrize("argv", [
    ["stationary", "--type", "Z3"],
    ["stationary"],
    ["cores", "--n", "1"],
    ["cores", "--n", "3", "--steps", "-2"],
    ["simulate", "--type", "A2", "--threads", "0"],
    ["cores", "--n", "3", "--format", "svg"],
])
def test_bad_arguments_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_computation_failure_exit_1(capsys):
    code, _, err = run(capsys, "stationary", "--type", "A9")
    assert code == 1 and "RankTooLarge" in err
    code, _, err = run(capsys, "shi", "--type", "A4")
    assert code == 1


def test_seed_env(capsys, monkeypatch):
    argv = ["simulate", "--type", "A2", "--steps", "30"]
    monkeypatch.setenv("COXWALK_SEED", "7")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--seed", "7")
    _, c, _ = run(capsys, *argv, "--seed", "8")
    assert a == b != c
    monkeypatch.setenv("COXWALK_SEED", "x")
    assert run(capsys, *argv)[0] == 2


def test_installed_script_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "coxwalk.cli", "simulate", "--type", "A3",
            "--steps", "25", "--trials", "2000", "--seed", "11"]
    env = dict(os.environ)
    a = subprocess.run(argv + ["--threads", "1"], capture_output=True, env=env)
    b = subprocess.run(argv + ["--threads", "3"], capture_output=True, env=env)
    env["COXWALK_DISABLE_NUMBA"] = "1"
    c = subprocess.run(argv, capture_output=True, env=env)
    assert a.returncode == 0
    assert a.stdout == b.stdout == c.stdout


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick")
    assert code == 0
    assert "checks as expected" in out.splitlines()[-1]
