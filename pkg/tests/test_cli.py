"""Command-line interface: subcommands, config files, exit codes."""

import json

import pytest

from rmfperc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_all_open_hypercube(capsys):
    code, out, _ = run(capsys, "count", "--family", "hypercube:n=4", "--all-open")
    assert code == 0 and out.strip() == "24"


def test_count_all_open_tree(capsys):
    code, out, _ = run(capsys, "count", "--family", "nary:n=2,h=4", "--all-open")
    assert code == 0 and out.strip() == "16"


def test_count_compare_coupling(capsys):
    code, out, _ = run(
        capsys, "count", "--family", "hypercube:n=4", "--dist", "uniform:0,1",
        "--c", "0.4", "--seed", "7", "--compare-coupling", "--xc", "0.3",
    )
    assert code == 0
    parts = dict(kv.split("=") for kv in out.split())
    assert int(parts["open"]) <= int(parts["accessible"])


def test_count_accessible(capsys):
    code, out, _ = run(
        capsys, "count", "--family", "hypercube:n=4", "--dist", "uniform:0,1",
        "--c", "0.4", "--seed", "7",
    )
    assert code == 0 and int(out.strip()) >= 0


def test_count_rejects_infinite_family(capsys):
    code, _, err = run(capsys, "count", "--family", "l2", "--all-open")
    assert code == 2 and "error" in err


def test_mass_uniform(capsys):
    code, out, _ = run(capsys, "mass", "--dist", "uniform:0,1", "--c", "0.3")
    assert code == 0 and abs(float(out) - 0.3) < 1e-12


def test_mass_normal(capsys):
    code, out, _ = run(capsys, "mass", "--dist", "normal:0,1", "--c", "1")
    assert code == 0 and abs(float(out) - 0.382925) < 1e-6


def test_mass_min_uniform(capsys):
    code, out, _ = run(capsys, "mass", "--min", "--dist", "uniform:0,1", "--c", "0.5")
    assert code == 0 and abs(float(out) - 0.5) < 1e-12


def test_mass_min_unsupported(capsys):
    code, _, err = run(capsys, "mass", "--min", "--dist", "normal:0,1", "--c", "0.5")
    assert code == 2 and "error" in err


def test_tnk_table(capsys):
    code, out, _ = run(capsys, "tnk", "--n", "4")
    assert code == 0
    rows = dict(tuple(map(int, ln.split(","))) for ln in out.strip().splitlines())
    assert sum(rows.values()) == 24 and rows[4] == 1


def test_sweep_zero_runs_is_usage_error(capsys):
    code, _, err = run(
        capsys, "sweep", "--runs", "0", "--family", "l2", "--dist", "uniform:0,1",
        "--c", "0.5", "--heights", "10", "--seed", "1",
    )
    assert code == 2 and "error" in err


def test_sweep_threshold_and_formats(tmp_path, capsys):
    csv_path = tmp_path / "curve.csv"
    svg_path = tmp_path / "curve.svg"
    code, _, _ = run(
        capsys, "sweep", "--family", "l2", "--dist", "uniform:0,1",
        "--c", "range:0.2,0.5,0.1", "--heights", "25,50", "--runs", "60",
        "--seed", "13", "--workers", "1", "--output", str(csv_path),
        "--svg-output", str(svg_path),
    )
    assert code == 0
    text = csv_path.read_text()
    assert "family,distribution,c,H" in text
    assert svg_path.read_text().startswith("<svg")

    code, out, _ = run(capsys, "threshold", "--input", str(csv_path), "--height", "50")
    assert code == 0 and "c_low=" in out and "c_high=" in out


def test_sweep_json_format(capsys):
    code, out, _ = run(
        capsys, "sweep", "--family", "rtree:d=2", "--dist", "uniform:0,1",
        "--c", "0.1", "--heights", "10", "--runs", "20", "--seed", "5",
        "--workers", "1", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["runs"] == 20 and len(payload["points"]) == 1


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "family": "rtree:d=2", "dist": "uniform:0,1", "c": "0.1",
        "heights": "10", "runs": 20, "seed": 5, "workers": 1, "format": "json",
    }))
    code, out, _ = run(capsys, "sweep", "--config", str(cfg))
    assert code == 0 and json.loads(out)["runs"] == 20
    # flag overrides the config value
    code, out, _ = run(capsys, "sweep", "--config", str(cfg), "--runs", "30")
    assert code == 0 and json.loads(out)["runs"] == 30


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"familly": "l2"}))
    code, _, err = run(capsys, "mass", "--config", str(cfg), "--dist", "uniform:0,1", "--c", "1")
    assert code == 2 and "familly" in err


def test_hex_seed_accepted(capsys):
    code, out, _ = run(
        capsys, "count", "--family", "hypercube:n=4", "--dist", "uniform:0,1",
        "--c", "0.4", "--seed", "0x2A",
    )
    assert code == 0
    code2, out2, _ = run(
        capsys, "count", "--family", "hypercube:n=4", "--dist", "uniform:0,1",
        "--c", "0.4", "--seed", "42",
    )
    assert code2 == 0 and out == out2


def test_moments_command(capsys):
    code, out, _ = run(
        capsys, "moments", "--family", "hypercube:n=5", "--p", "0.5",
        "--runs", "500", "--seed", "3",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["expected"] == pytest.approx(120 * 0.5**4)
    assert abs(rep["mc_mean"] - rep["expected"]) <= 5 * max(rep["mc_mean_se"], 1e-9)


def test_missing_required_flag_is_exit_2(capsys):
    code, _, err = run(capsys, "mass", "--c", "0.5")
    assert code == 2 and "--dist" in err
