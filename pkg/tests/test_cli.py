import math
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from golden_configs import GOLDEN
from sshq.cli import ConfigError, RunConfig, main, parse_config, run, serialize_config
from sshq.io import heatmap_bytes, read_csv, render_heatmap
from sshq.observables import OccupationField

PI = math.pi
GOLDEN_DIR = Path(__file__).parent / "golden"


def test_defaults_are_paper_values():
    cfg = parse_config("", "evolve")
    assert (cfg.n_cells, cfg.epsilon, cfg.gamma) == (20, 1.0, 0.0025)
    assert (cfg.pump_fa, cfg.pump_fb) == (0.01, 0.01)
    assert (cfg.t_a, cfg.t_b, cfg.t_end) == (10.0, 30.0, 40.0)
    assert cfg.alpha_t == pytest.approx(0.75 * PI) and cfg.alpha_g == pytest.approx(0.5 * PI)


def test_override_and_comments():
    cfg = parse_config("# damping\ngamma=0.005  # stronger\n\nalpha_g = 0.25pi\n", "evolve")
    assert cfg.gamma == 0.005
    assert cfg.alpha_g == pytest.approx(0.25 * PI)
    assert parse_config("gamma=0.005", "evolve", ["gamma=0.001"]).gamma == 0.001
    assert parse_config("alpha_t = 0.75π", "evolve").alpha_t == pytest.approx(0.75 * PI)


def test_unknown_key_names_line():
    with pytest.raises(ConfigError, match="line 1.*gamm"):
        parse_config("gamm=0.005", "evolve")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("gamma=0.1\nv0=abc", "evolve")
    with pytest.raises(ConfigError, match="--set #1"):
        parse_config("", "evolve", ["bogus=1"])


def test_missing_or_unknown_command():
    with pytest.raises(ConfigError, match="missing required command"):
        parse_config("gamma=0.1")
    with pytest.raises(ConfigError, match="unknown command"):
        parse_config("", "plot")
    assert parse_config("command = sd\n").command == "sd"


def test_bad_enums():
    with pytest.raises(ConfigError):
        parse_config("init=middle", "evolve")
    with pytest.raises(ConfigError):
        parse_config("solver=euler", "evolve")


@pytest.mark.parametrize("cfg", [
    RunConfig("evolve"),
    RunConfig("sweep", gamma=0.1 / 3, alpha_t=0.7 * PI, sweep_alphas=(0.25 * PI, 0.5 * PI)),
    RunConfig("sd", sweep_gammas=(), init="last_edge", solver="rk4", out_dir="a b/c"),
])
def test_round_trip(cfg):
    assert parse_config(serialize_config(cfg)) == cfg


def _csv_format_ok(path):
    text = Path(path).read_text()
    assert text.endswith("\n") and not text.endswith("\n\n")
    lines = text.splitlines()
    width = len(lines[0].split(","))
    assert all(len(line.split(",")) == width for line in lines)
    return lines


def test_evolve_outputs(tmp_path):
    assert main(["evolve", "--set", f"out_dir={tmp_path}", "--set", "t_end=12"]) == 0
    lines = _csv_format_ok(tmp_path / "occupations.csv")
    assert lines[0].split(",")[:2] == ["time", "site_1"] and lines[0].endswith("site_40")
    header, tot = read_csv(tmp_path / "totals.csv")
    assert header == ["time", "P_tot"]
    assert tot.shape == (12 * 16 + 1, 2)
    _, occ = read_csv(tmp_path / "occupations.csv")
    np.testing.assert_allclose(occ[:, 1:].sum(1), tot[:, 1], rtol=1e-14)
    # 17 significant digits round-trip the floats exactly
    assert any(len(v.lstrip("-").replace(".", "").replace("e", "")) >= 15
               for v in lines[-1].split(",")[1:])
    data = (tmp_path / "heatmap.pgm").read_bytes()
    assert data.startswith(b"P5\n193 40\n255\n")
    assert (tmp_path / "heatmap.pgm.max.txt").exists()


def test_evolve_is_byte_identical(tmp_path):
    for d in ("a", "b"):
        main(["evolve", "--set", f"out_dir={tmp_path / d}", "--set", "t_end=5", "--set", "solver=rk4"])
    for name in ("occupations.csv", "totals.csv", "heatmap.pgm", "heatmap.pgm.max.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_trivial_quench_variant(tmp_path):
    cfg = parse_config("alpha_g=0.25pi\nt_end=20", "evolve", [f"out_dir={tmp_path}"])
    run(cfg)
    _, occ = read_csv(tmp_path / "occupations.csv")
    assert occ.shape == (321, 41)


def test_heatmap_rendering(tmp_path):
    data, vmax = heatmap_bytes(np.full((7, 4), 0.3))
    assert vmax == 0.3 and data == b"P5\n7 4\n255\n" + bytes([255]) * 28
    data, vmax = heatmap_bytes(np.zeros((3, 2)))
    assert vmax == 0.0 and data.endswith(bytes(6))
    pop = np.array([[0.0, 1.0], [0.5, 0.25]])  # time x site
    f = OccupationField(np.arange(2.0), pop, pop.sum(1))
    path = render_heatmap(f, tmp_path / "x.pgm")
    raw = path.read_bytes()
    # rows are sites: site 1 = (0, 0.5), site 2 = (1, 0.25)
    assert raw == b"P5\n2 2\n255\n" + bytes([0, 128, 255, 64])
    assert (tmp_path / "x.pgm.max.txt").read_text() == "1\n"


def test_hoppings_command(tmp_path):
    run(parse_config("", "hoppings", [f"out_dir={tmp_path}"]))
    header, t = read_csv(tmp_path / "hoppings.csv")
    assert header[:3] == ["alpha_over_pi", "J1", "J2"]
    inner = t[1:-1]
    k = np.argmin(np.abs(inner[:, 1] - inner[:, 2]))
    assert inner[k, 0] == pytest.approx(0.5, abs=1e-12)
    assert np.count_nonzero(np.diff(np.sign(inner[:, 1] - inner[:, 2]))) <= 2


def test_spectrum_command(tmp_path):
    run(parse_config("alpha_points=5", "spectrum", [f"out_dir={tmp_path}"]))
    header, t = read_csv(tmp_path / "spectrum.csv")
    assert len(header) == 41 and t.shape == (5, 41)
    row = t[3]  # alpha = 0.75 pi
    assert row[0] == pytest.approx(0.75)
    assert np.sum(np.abs(row[1:] - 1) < 0.1) == 2


def test_eigenstate_command(tmp_path):
    run(parse_config("alpha=0.5pi", "eigenstate", [f"out_dir={tmp_path}"]))
    _, vec = read_csv(tmp_path / "eigenvectors.csv")
    assert vec.shape == (40, 41)
    _, sup = read_csv(tmp_path / "superpositions.csv")
    assert (sup[0::2, 1] ** 2).sum() > 0.999 and (sup[1::2, 2] ** 2).sum() > 0.999


def test_sd_command(tmp_path):
    run(parse_config("alpha_points=11", "sd", [f"out_dir={tmp_path}"]))
    _, t = read_csv(tmp_path / "sd.csv")
    assert np.all(t[t[:, 0] >= 0.6 - 1e-9, 2] > 1.99)
    assert np.all(t[t[:, 0] <= 0.4 + 1e-9, 2] < 0.01)


def test_sd_dynamics_command(tmp_path):
    run(parse_config("t_end=2\nsample_stride=0.25", "sd-dynamics", [f"out_dir={tmp_path}"]))
    header, t = read_csv(tmp_path / "sd_dynamics.csv")
    assert header == ["Jt_over_2pi", "S_D", "S_D_over_ln2"]
    assert t[0, 2] == pytest.approx(2, abs=1e-3)


def test_sweep_command_collapses_to_decay_law(tmp_path):
    cfg = parse_config("pump.fa=0\npump.fb=0\ninit=both_edges\nt_end=40\nsample_stride=0.5\n"
                       "sweep.alphas=0.25pi,0.5pi,0.75pi", "sweep", [f"out_dir={tmp_path}"])
    paths = run(cfg)
    assert len(paths) == 15
    for tag, path in paths.items():
        g = float(tag.split("_")[1])
        _, t = read_csv(path)
        np.testing.assert_allclose(t[:, 1], 2 * np.exp(-2 * g * t[:, 0] * 2 * PI), rtol=1e-8)


def test_cli_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.conf"
    bad.write_text("gamm=0.1\n")
    assert main(["evolve", "--config", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["evolve", "--config", str(tmp_path / "missing.conf")]) == 2


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_heatmaps(tmp_path, name):
    args = ["evolve", "--set", f"out_dir={tmp_path}"]
    for s in GOLDEN[name]:
        args += ["--set", s]
    assert main(args) == 0
    assert (tmp_path / "heatmap.pgm").read_bytes() == (GOLDEN_DIR / f"{name}.pgm").read_bytes()
