import csv
import numpy as np
import pytest
from xml.etree import ElementTree

from steklov_lab import __version__, cli
from steklov_lab._fit import fit_slope
from steklov_lab.errors import InsufficientData, SolverError


def run(tmp_path, *argv):
    out = tmp_path / "out"
    code = cli.main([*argv, "--out", str(out)])
    return code, out


def read_csv(path):
    comments, rows = [], []
    with open(path, newline="") as fh:
        for line in fh:
            if line.startswith("#"):
                comments.append(line.rstrip("\n"))
            else:
                rows.append(line.rstrip("\n"))
    header = rows[0].split(",")
    data = list(csv.reader(rows[1:]))
    return comments, header, data


def test_parse_fraction_and_list():
    assert cli.parse_fraction("1/8") == 0.125
    assert cli.parse_fraction("0.25") == 0.25
    assert cli.parse_fraction("3") == 3.0
    with pytest.raises(ValueError):
        cli.parse_fraction("one half")
    assert cli.parse_number_list("1/8,1/16") == [0.125, 0.0625]
    assert cli.parse_number_list(" 2 , 0.5 ") == [2.0, 0.5]


def test_fit_slope_recovers_exponent():
    x = np.array([1.0, 2.0, 4.0, 8.0])
    fit = fit_slope(x, x**2)
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    flat = fit_slope(x, np.full(4, 3.0))
    assert flat.slope == pytest.approx(0.0, abs=1e-12)
    assert flat.r_squared == 1.0  # zero residual against a constant


def test_fit_slope_with_noise_and_validation():
    rng = np.random.default_rng(5)
    x = np.logspace(0, 2, 12)
    y = 0.7 * x**1.0 * np.exp(rng.normal(0.0, 0.01, 12))
    fit = fit_slope(x, y)
    assert 0.95 <= fit.slope <= 1.05
    with pytest.raises(InsufficientData):
        fit_slope([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(InsufficientData):
        fit_slope([1.0, 2.0, 3.0], [1.0, -2.0, 3.0])


def test_mesh_command_writes_text(tmp_path):
    code, out = run(tmp_path, "mesh", "--domain", "grid", "--nx", "4", "--ny", "4")
    assert code == 0
    text = (out / "mesh.txt").read_text()
    assert "VERTICES 25" in text


def test_solve_command_csv_roundtrip(tmp_path):
    code, out = run(
        tmp_path, "solve", "--problem", "neumann", "--nx", "16", "--ny", "16",
        "--k", "3",
    )
    assert code == 0
    comments, header, data = read_csv(out / "spectrum.csv")
    assert comments[0] == f"# steklov-lab {__version__}"
    assert any("config.problem = neumann" in c for c in comments)
    assert header == ["index", "eigenvalue", "residual", "functional"]
    assert len(data) == 3
    # 17 significant digits survive the round-trip: mu_1 of the 16x16 grid
    mu_1 = float(data[1][1])
    assert 9.8 < mu_1 < 10.0
    assert f"{mu_1:.17g}" == data[1][1]


def test_solve_exit_code_on_bad_config(tmp_path):
    code, out = run(
        tmp_path, "solve", "--domain", "perforated", "--eps", "0.6", "--beta", "1",
    )
    assert code == 1
    code2, _ = run(tmp_path, "solve", "--k", "0")
    assert code2 == 1


def test_usage_error_is_exit_one(tmp_path, capsys):
    assert cli.main(["solve", "--bogus-flag", "1"]) == 1
    assert cli.main(["not-a-command"]) == 1
    capsys.readouterr()


def test_solver_failure_is_exit_two(tmp_path, monkeypatch):
    def explode(cfg):
        raise SolverError("synthetic failure")

    monkeypatch.setitem(cli._COMMANDS, "annulus-opt", explode)
    code, _ = run(tmp_path, "annulus-opt")
    assert code == 2


def test_outputs_are_byte_deterministic(tmp_path):
    # identical invocations must reproduce identical bytes, CSV and SVG both
    args = ["sweep-beta", "--beta", "10,100", "--k", "1", "--out",
            str(tmp_path / "out")]
    assert cli.main(args) == 0
    first = {
        name: (tmp_path / "out" / name).read_bytes()
        for name in ("sweep_beta.csv", "sweep_beta.svg")
    }
    assert cli.main(args) == 0
    for name, blob in first.items():
        assert (tmp_path / "out" / name).read_bytes() == blob


def test_env_var_overrides_out_flag(tmp_path, monkeypatch):
    env_dir = tmp_path / "env_out"
    monkeypatch.setenv("STEKLOV_LAB_OUT", str(env_dir))
    code, out = run(tmp_path, "annulus-opt", "--points", "12")
    assert code == 0
    assert (env_dir / "annulus_opt.csv").exists()
    assert not (out / "annulus_opt.csv").exists()


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('points = 9\nlo = "1/10"\n')
    out = tmp_path / "out"
    assert cli.main([
        "annulus-opt", "--config", str(cfg), "--points", "7", "--out", str(out)
    ]) == 0
    comments, _, data = read_csv(out / "annulus_opt.csv")
    assert any("config.points = 7" in c for c in comments)  # flag beats file
    assert any("config.lo = 0.1" in c for c in comments)
    assert len(data) == 7


def test_config_file_rejects_unknown_and_bad_values(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("mystery = 3\n")
    assert cli.main(["annulus-opt", "--config", str(bad)]) == 1
    worse = tmp_path / "worse.toml"
    worse.write_text('points = "many"\n')
    assert cli.main(["annulus-opt", "--config", str(worse)]) == 1


def test_lemma31_command_full_grid(tmp_path):
    code, out = run(tmp_path, "verify-lemma31")
    assert code == 0
    comments, header, data = read_csv(out / "lemma31.csv")
    assert header[:4] == ["ell", "dim", "r", "sigma"]
    assert len(data) == 360
    assert any("n_violations = 0" in c for c in comments)


def test_emitted_svg_is_wellformed_xml(tmp_path):
    code, out = run(tmp_path, "annulus-opt", "--points", "16")
    assert code == 0
    tree = ElementTree.parse(out / "annulus_opt.svg")
    root = tree.getroot()
    assert root.tag.endswith("svg")
    assert any(child.tag.endswith("polyline") for child in root.iter())


def test_version_flag(capsys):
    assert cli.main(["--version"]) == 0
    assert capsys.readouterr().out.strip() == __version__
