import json
import subprocess
import sys
from fractions import Fraction

import pytest

from beattysums.exact import QuadraticReal
from beattysums.harness.cli import main
from beattysums.harness.config import ExperimentConfig, parse_real
from beattysums.harness.experiment import (ResultRow, fit_decay, log_spaced_primes,
                                           run_burgess_experiment, run_expsum_experiment,
                                           select_characters)
from beattysums.harness.io import COLUMNS, read_results, render_csv, write_report, write_results


def test_parse_real_grammar():
    assert parse_real("sqrt:2") == QuadraticReal.sqrt(2)
    assert parse_real("golden") == QuadraticReal.golden()
    assert parse_real("quad:-1,1,5,2") == QuadraticReal.golden() - 1
    assert parse_real("rat:-6/5") == Fraction(-6, 5)
    assert parse_real("9/10") == Fraction(9, 10)
    for bad in ("quad:1,2", "cube:2", "abc"):
        with pytest.raises(ValueError):
            parse_real(bad)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(moduli=[7], eps=0)
    with pytest.raises(ValueError):
        ExperimentConfig(moduli=[2])
    with pytest.raises(ValueError):
        ExperimentConfig(moduli=[7], beta_grid=[])
    with pytest.raises(ValueError):
        ExperimentConfig()
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"moduli": [7], "colour": "red"})
    cfg = ExperimentConfig.from_dict({"moduli": [7, 11]})
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_prime_grid():
    ps = log_spaced_primes(1000, 100_000, 12)
    assert len(ps) == 12 and ps[0] == 1009 and ps[-1] <= 100_000
    assert ps == sorted(set(ps))


def test_single_modulus_example(tmp_path):
    cfg = ExperimentConfig(moduli=[7], beta_grid=["0"], output=str(tmp_path / "out.csv"))
    res = run_burgess_experiment(cfg)
    assert len(res.rows) == 1
    row = res.rows[0]
    assert (row.N, row.abs_S_over_N) == (2, 1.0)
    assert not res.report.fitted and "refused" in res.report.note
    write_results(res.rows, "csv", cfg.output)
    assert len(read_results(cfg.output)) == 1


def test_character_selection():
    import random
    rng = random.Random(0)
    assert [c.order for c in select_characters(101, "quadratic", 4, rng)] == [2]
    picked = select_characters(45, "quadratic", 3, rng)
    assert len(picked) == 3 and not any(c.is_principal for c in picked)
    assert len(select_characters(12, "all", 0, rng)) == 3


def test_fit_decay():
    xs = [10, 100, 1000, 10_000]
    ys = [x ** -0.25 for x in xs]
    rep = fit_decay(xs, ys, "rho")
    assert rep.fitted and rep.exponent == pytest.approx(0.25)
    assert rep.max_abs_residual < 1e-12
    assert not fit_decay(xs[:3], ys[:3], "rho").fitted


def test_expsum_experiment_runs():
    cfg = ExperimentConfig(kind="expsum", prime_range=[100, 5000, 6], a_samples=8)
    res = run_expsum_experiment(cfg)
    assert all(0 <= r.abs_U_over_N <= 1 for r in res.rows)
    assert res.report.quantity == "eta"


def test_io_formats(tmp_path):
    assert render_csv([]) == ",".join(COLUMNS) + "\n"
    rows = [ResultRow(7, "prime", "7.3", "rat:1/3", 5, 0.4, None, None)]
    path = tmp_path / "r.json"
    write_results(rows, "json", path)
    back = json.loads(path.read_text())
    assert back == [{"k": 7, "class": "prime", "chi_id": "7.3", "beta": "rat:1/3", "N": 5,
                     "abs_S_over_N": 0.4, "abs_U_over_N": None, "wall_ms": None}]
    many = rows * 10_000
    write_results(many, "csv", tmp_path / "big.csv")
    assert (tmp_path / "big.csv").read_text().count("\n") == 10_001
    write_report(fit_decay([1, 2], [1, 1], "rho"), tmp_path / "rep.json")
    with pytest.raises(OSError, match="nope"):
        write_results(rows, "csv", tmp_path / "nope" / "x.csv")
    with pytest.raises(ValueError):
        write_results(rows, "xml", tmp_path / "x.xml")


def test_cli_subcommands(capsys):
    assert main(["charsum", "--k", "7", "--n", "5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["S"]["re"] == 2
    assert main(["membership", "--m-max", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["members"] == [1, 2, 4, 5, 7]
    assert main(["expsum", "--k", "7", "--n", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["U"]["im"] == pytest.approx(7 ** 0.5)
    assert main(["cfrac", "--alpha", "golden", "--levels", "10"]) == 0
    assert json.loads(capsys.readouterr().out)["quotients"] == [1] * 10
    assert main(["discrepancy", "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["D"] == pytest.approx(0.49509, abs=1e-5)
    assert main(["psi", "--delta", "1/100", "--x", "rat:1/2"]) == 0
    assert json.loads(capsys.readouterr().out)["points"][0]["closed"] == 1
    assert main(["charsum", "--k", "101", "--n", "300", "--delta", "1/50",
                 "--fourier-j", "500"]) == 0
    assert json.loads(capsys.readouterr().out)["smoothed"]["sandwich_ok"]
    assert main(["charsum", "--k", "7", "--alpha", "cube:2"]) == 2


def test_cli_experiment_and_entry_point(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"moduli": [7, 11, 13, 17], "beta_grid": ["0", "rat:1/3"]}))
    out = tmp_path / "rows.csv"
    assert main(["experiment", "run", str(cfg), "--out", str(out), "--quiet"]) == 0
    assert len(read_results(out)) == 8
    assert (tmp_path / "rows.report.json").exists()
    proc = subprocess.run([sys.executable, "-m", "beattysums.harness.cli", "experiment", "run",
                           str(cfg), "--format", "json", "--out", str(tmp_path / "r.json"),
                           "--threads", "2"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    rows = json.loads((tmp_path / "r.json").read_text())
    assert [r["k"] for r in rows] == [7, 7, 11, 11, 13, 13, 17, 17]
