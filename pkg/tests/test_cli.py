import json
import math

import pytest

from smddc import beta1, beta2_sdo
from smddc.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ladder_csv(capsys):
    code, out, _ = run_cli(capsys, ["ladder", "--gamma", "4", "--omega", "20", "--depth", "3", "--k", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "level,rho,sinr"
    rhos = [float(line.split(",")[1]) for line in lines[1:]]
    assert rhos == [4.0, 20.0, 100.0]


def test_ladder_json_matches_csv(capsys):
    argv = ["ladder", "--gamma", "4", "--omega", "20", "--depth", "2", "--k", "2"]
    _, out_json, _ = run_cli(capsys, argv + ["--format", "json"])
    payload = json.loads(out_json)
    assert payload["command"] == "ladder"
    assert [r["rho"] for r in payload["rows"]] == [4.0, 20.0]
    assert all(r["sinr"] == pytest.approx(4.0) for r in payload["rows"])


def test_gamma_db_conversion(capsys):
    # 10 log10(4) dB should reproduce the linear gamma=4 ladder
    db = 10 * math.log10(4.0)
    _, out, _ = run_cli(capsys, ["ladder", "--gamma-db", str(db), "--omega", "20", "--depth", "2", "--k", "2"])
    rhos = [float(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
    assert rhos == pytest.approx([4.0, 20.0])


def test_analytic_sdo_record(capsys):
    argv = [
        "analytic", "--gamma", "4", "--omega", "20", "--policy", "sdo",
        "--k", "3", "--w", "50", "--ws", "55", "--format", "json",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    record = json.loads(out)["record"]
    assert record["beta1"] == pytest.approx(beta1(4.0, 20.0))
    assert record["beta2"] == pytest.approx(beta2_sdo(4.0, 20.0, 20.0, 3))
    assert 0.0 < record["exact_p_se"] < 1.0
    assert 0.0 < record["eta"] < 1.0
    assert record["chernoff_bound"] >= record["exact_p_se"]


def test_simulate_deterministic_and_runtime_on_stderr(capsys):
    argv = [
        "simulate", "--gamma", "4", "--omega", "20", "--policy", "sdo",
        "--k", "3", "--trials", "20000", "--seed", "5",
    ]
    code, out1, err1 = run_cli(capsys, argv)
    assert code == 0
    assert "simulate:" in err1 and "simulate:" not in out1
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2
    header, row = out1.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["policy"] == "sdo" and fields["trials"] == "20000"
    assert 0.0 <= float(fields["p_hat"]) <= 1.0


def test_simulate_worker_invariance(capsys):
    argv = [
        "simulate", "--gamma", "4", "--omega", "20", "--policy", "oma",
        "--trials", "120000", "--seed", "1",
    ]
    _, out1, _ = run_cli(capsys, argv + ["--workers", "1"])
    _, out4, _ = run_cli(capsys, argv + ["--workers", "4"])
    assert out1 == out4


def test_sweep_ws_two_policies(capsys):
    argv = [
        "sweep", "--gamma", "4", "--omega", "20", "--k", "3",
        "--policy", "sdo,oma", "--axis", "w_s", "--values", "50,55,60",
        "--trials", "5000",
    ]
    code, out, err = run_cli(capsys, argv)
    assert code == 0
    assert "sweep:" in err
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 6  # header + 3 values x 2 policies
    header = lines[0].split(",")
    i_policy, i_value, i_err = header.index("policy"), header.index("value"), header.index("error")
    rows = [line.split(",") for line in lines[1:]]
    assert [r[i_policy] for r in rows] == ["sdo", "oma"] * 3
    assert all(r[i_err] == "" for r in rows)
    assert [r[i_value] for r in rows] == ["50", "50", "55", "55", "60", "60"]


def test_sweep_range_syntax(capsys):
    argv = [
        "sweep", "--gamma", "4", "--omega", "20", "--policy", "oma",
        "--axis", "omega", "--values", "10:5:20", "--trials", "2000",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    i_value = out.splitlines()[0].split(",").index("value")
    values = [float(line.split(",")[i_value]) for line in out.strip().splitlines()[1:]]
    assert values == [10.0, 15.0, 20.0]


def test_missing_budget_is_exit_2(capsys):
    code, _, err = run_cli(capsys, ["simulate", "--gamma", "4"])
    assert code == 2 and "error:" in err


def test_invalid_policy_is_exit_2(capsys):
    code, _, _ = run_cli(capsys, ["simulate", "--gamma", "4", "--omega", "20", "--policy", "nope"])
    assert code == 2


def test_invalid_config_is_exit_2(capsys):
    # w_s < w is not a valid session
    code, _, _ = run_cli(capsys, ["simulate", "--gamma", "4", "--omega", "20", "--w", "50", "--ws", "40"])
    assert code == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "ladder.csv"
    code, out, _ = run_cli(capsys, ["ladder", "--gamma", "1", "--omega", "5", "--out", str(path)])
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[0] == "level,rho,sinr"
