import json
from fractions import Fraction

import pytest

from rsdlab import loads_instance
from rsdlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_then_exact_pipeline(tmp_path, capsys):
    path = tmp_path / "bernoulli5.json"
    code, out, _ = run_cli(capsys, "gen", "--family", "bernoulli-welfare", "--n", "5", "--out", str(path))
    assert code == 0
    inst = loads_instance(path.read_text())
    assert inst.n == 5

    code, out, _ = run_cli(capsys, "exact", "--in", str(path), "--objective", "welfare")
    assert code == 0
    assert "mean: 1/5" in out


def test_exact_writes_machine_readable_summary(tmp_path, capsys):
    path = tmp_path / "inst.json"
    out_path = tmp_path / "summary.json"
    run_cli(capsys, "gen", "--family", "worst-case-metric-line", "--n", "3", "--out", str(path))
    code, _, _ = run_cli(
        capsys, "exact", "--in", str(path), "--objective", "cost", "--out", str(out_path)
    )
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["mean"] == "11/3"
    assert payload["order_count"] == 6


def test_opt_subcommand(tmp_path, capsys):
    path = tmp_path / "inst.json"
    run_cli(capsys, "gen", "--family", "worst-case-metric-line", "--n", "6", "--out", str(path))
    code, out, _ = run_cli(capsys, "opt", "--in", str(path), "--objective", "cost")
    assert code == 0
    assert "optimal cost: 2 (2" in out


def test_bounds_worked_example(tmp_path, capsys):
    out_path = tmp_path / "plan.json"
    code, out, _ = run_cli(
        capsys, "bounds", "--method", "welfare-bernstein",
        "--n", "10", "--eps", "0.5", "--delta", "0.1", "--out", str(out_path),
    )
    assert code == 0
    assert "k: 320" in out
    assert json.loads(out_path.read_text())["k"] == 320


def test_bounds_window_mode(capsys):
    code, out, _ = run_cli(
        capsys, "bounds", "--method", "welfare-lower-window",
        "--n", "10", "--eps", "0.5", "--delta", "0.1",
    )
    assert code == 0
    assert "applicable: False" in out


def test_estimate_subcommand_deterministic(tmp_path, capsys):
    path = tmp_path / "inst.json"
    run_cli(capsys, "gen", "--family", "worst-case-metric-line", "--n", "4", "--out", str(path))
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    base = ["estimate", "--in", str(path), "--objective", "cost",
            "--k", "500", "--lambda", "4", "--seed", "42"]
    assert run_cli(capsys, *base, "--out", str(out_a))[0] == 0
    assert run_cli(capsys, *base, "--workers", "4", "--out", str(out_b))[0] == 0
    assert out_a.read_text() == out_b.read_text()


def test_reduce_round_trip(tmp_path, capsys):
    src = tmp_path / "abstract.json"
    src.write_text('{"n": 2, "setting": "abstract", "rankings": [[1, 2], [1, 2]]}')
    built_path = tmp_path / "built.json"
    code, out, _ = run_cli(
        capsys, "reduce", "--in", str(src), "--setting", "metric", "--out", str(built_path)
    )
    assert code == 0
    assert "scaled total: 1109" in out
    assert "top block: 4" in out
    assert "round trip vs enumeration: PASS" in out
    built = loads_instance(built_path.read_text())
    assert built.cost(2, 2) == Fraction(320)
    sidecar = json.loads((tmp_path / "built.json.decode.json").read_text())
    assert sidecar["round_trip"] == "pass"


def test_coverage_writes_reproducible_csv(tmp_path, capsys):
    path = tmp_path / "inst.json"
    run_cli(capsys, "gen", "--family", "bernoulli-welfare", "--n", "5", "--out", str(path))
    csv_a = tmp_path / "a.csv"
    csv_b = tmp_path / "b.csv"
    base = ["coverage", "--in", str(path), "--objective", "welfare",
            "--method", "welfare-bernstein", "--eps", "0.5", "--delta", "0.2",
            "--trials", "20", "--seed", "7"]
    assert run_cli(capsys, *base, "--out", str(csv_a))[0] == 0
    assert run_cli(capsys, *base, "--workers", "2", "--out", str(csv_b))[0] == 0
    assert csv_a.read_bytes() == csv_b.read_bytes()
    lines = csv_a.read_text().strip().split("\n")
    assert lines[0].startswith("trial_index,seed,estimate")
    assert len(lines) == 21


def test_invalid_instance_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "setting": "metric", "costs": [[1, 10], [1, 1]]}')
    code, _, err = run_cli(capsys, "exact", "--in", str(path), "--objective", "cost")
    assert code == 1
    assert "failed validation" in err


def test_malformed_json_exits_one(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"n": 2, "setting": ')
    code, _, err = run_cli(capsys, "exact", "--in", str(path))
    assert code == 1
    assert "malformed" in err


def test_missing_file_exits_one(tmp_path, capsys):
    code, _, err = run_cli(capsys, "opt", "--in", str(tmp_path / "nope.json"), "--objective", "cost")
    assert code == 1


def test_unknown_flag_exits_two(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--method", "welfare-bernstein", "--n", "4",
              "--eps", "0.5", "--delta", "0.1", "--frobnicate"])
    assert exc.value.code == 2


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify"])
    assert exc.value.code == 2


def test_oracle_cap_env_override(tmp_path, capsys, monkeypatch):
    path = tmp_path / "inst.json"
    run_cli(capsys, "gen", "--family", "bernoulli-welfare", "--n", "5", "--out", str(path))
    monkeypatch.setenv("RSDLAB_ORACLE_CAP", "4")
    code, _, err = run_cli(capsys, "exact", "--in", str(path), "--objective", "welfare")
    assert code == 1
    assert "cap of 4" in err
