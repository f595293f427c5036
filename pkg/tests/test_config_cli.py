import csv
import io
import json

import pytest

from nuphase.cli import main
from nuphase.config import ConfigError, RunConfig, load_config, parse_config
from nuphase.evolution import complex_rate


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_empty_document_gives_defaults():
    cfg = parse_config("")
    assert cfg.echo() == RunConfig().echo()
    assert cfg["superposition.dx_m"] == 1e-14
    assert cfg["source.E0_MeV"] == 2.6 and cfg["source.sigmaE_MeV"] == 0.75
    assert load_config(None).echo() == cfg.echo()


def test_comments_and_whitespace():
    cfg = parse_config("# header\n\n  superposition.dx_m = 2e-14   # doubled\n")
    assert cfg["superposition.dx_m"] == 2e-14


def test_invariant_error_has_line():
    with pytest.raises(ConfigError) as err:
        parse_config("target.Z = 83\nsuperposition.dx_m = -1\n")
    assert err.value.line == 2 and "line 2" in str(err.value)


def test_unknown_keys_listed():
    with pytest.raises(ConfigError) as err:
        parse_config("foo.bar = 1\ntarget.Z = 83\nbaz = 2\n")
    assert "'foo.bar'" in str(err.value) and "'baz'" in str(err.value)
    assert err.value.line == 1


@pytest.mark.parametrize("text", ["target.Z = 8.5", "target.Z", "env.gas = Xe",
                                  "target.n_atoms = nan", "source.E0_MeV ="])
def test_malformed_values(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_cross_field_error_points_at_section():
    text = "target.Z = 83\nsuperposition.dx_m = 1e-14\nsuperposition.sigma_c_m = 1e-13\n"
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert err.value.line == 2


def test_convention_switch_halves_rates():
    cfg = parse_config("evolve.prefactor_convention = unit\n")
    base = RunConfig()
    r_unit = complex_rate(cfg.model(), cfg.source(), cfg.target(), cfg.superposition(),
                          convention=cfg["evolve.prefactor_convention"])
    r_paper = complex_rate(base.model(), base.source(), base.target(), base.superposition(),
                           convention=base["evolve.prefactor_convention"])
    assert r_unit.decay == pytest.approx(r_paper.decay / 2, rel=1e-14)
    assert r_unit.phase_rate == pytest.approx(r_paper.phase_rate / 2, rel=1e-14)


def test_overrides():
    cfg = RunConfig().with_overrides(["superposition.dx_m=5e-15"])
    assert cfg["superposition.dx_m"] == 5e-15
    with pytest.raises(ConfigError):
        RunConfig().with_overrides(["nope=1"])


@pytest.fixture(scope="module")
def evolve_run(tmp_path_factory):
    d = tmp_path_factory.mktemp("evolve")
    out = d / "run.csv"
    assert main(["evolve", "--t-max", "2e5", "--n-points", "201", "--out", str(out)]) == 0
    return out


def test_evolve_rows(evolve_run):
    rows = _rows(evolve_run.read_text())
    first = rows[0]
    assert [float(first[k]) for k in ("t_s", "phase_rad", "amplitude", "signal_cos",
                                      "signal_sin", "click_prob")] == [0, 0, 0.5, 1, 0, 0]
    at = next(r for r in rows if float(r["t_s"]) == 1e5)
    assert 0.5 <= float(at["phase_rad"]) <= 2.0
    t = [float(r["t_s"]) for r in rows]
    phase = [float(r["phase_rad"]) for r in rows]
    slope = phase[-1] / t[-1]
    assert all(abs(p - slope * ti) <= 1e-12 * max(1.0, p) for p, ti in zip(phase, t))


def test_evolve_manifest(evolve_run):
    manifest = json.loads(evolve_run.with_suffix(".json").read_text())
    assert manifest["config"]["evolve.t_max_s"] == 2e5
    derived = manifest["derived"]
    assert derived["Q_W"] == pytest.approx(129.79, abs=5e-3)
    assert derived["flux_cm2s"] == pytest.approx(1.79e13, rel=2e-3)
    assert "timestamp" in manifest["run"]


def test_evolve_to_stdout(capsys):
    assert main(["evolve", "--n-points", "3", "--t-max", "1e5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("t_s,phase_rad,amplitude,signal_cos,signal_sin,click_prob\n")
    assert len(out.strip().splitlines()) == 4


def test_cross_section_cli(capsys):
    assert main(["cross-section", "--energies", "2.6"]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["sigma_cm2"]) == pytest.approx(4.80e-40, rel=0.01)
    assert float(row["T_max_eV"]) == pytest.approx(69.5, abs=0.1)


def test_cross_section_cli_rejects_high_energy(capsys, tmp_path):
    out = tmp_path / "table.csv"
    assert main(["cross-section", "--energies", "2.6", "60", "--out", str(out)]) == 2
    assert not out.exists()
    assert "form factor" in capsys.readouterr().err


def test_scan_pt_cli(capsys):
    assert main(["scan-pt", "--P-min", "1e-16", "--P-max", "1e-10", "--P-count", "2",
                 "--T-min", "1", "--T-max", "300", "--T-count", "2"]) == 0
    rows = {(float(r["P_Pa"]), float(r["T_K"])): r for r in _rows(capsys.readouterr().out)}
    assert rows[(1e-10, 300.0)]["allowed"] == "false"
    assert set(rows) == {(1e-16, 1.0), (1e-16, 300.0), (1e-10, 1.0), (1e-10, 300.0)}


def test_scan_pt_empty_grid():
    assert main(["scan-pt", "--P-count", "0"]) == 2


def test_json_subcommands(capsys):
    assert main(["design-sg"]) == 0
    sg = json.loads(capsys.readouterr().out)
    assert sg["velocity_m_s"] == pytest.approx(9.27e-20, rel=1e-3)
    assert main(["design-cavity"]) == 0
    assert json.loads(capsys.readouterr().out)["v_kick_m_s"] == pytest.approx(2.6e-26, rel=0.02)
    assert main(["array-scale", "--n", "10"]) == 0
    assert json.loads(capsys.readouterr().out)["crystal_count"] == 10**4
    assert main(["feasibility"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["wavepacket_window"]["ok"] is True


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("superposition.dx_m = -1\n")
    assert main(["evolve", "--config", str(bad)]) == 1
    assert main(["evolve", "--config", str(tmp_path / "missing.cfg")]) == 1
    assert main(["design-cavity", "--epsilon", "-1"]) == 2
    assert main(["array-scale", "--n", "0"]) == 2
    assert main(["no-such-command"]) == 2


def test_quadrature_failure_exit_code(capsys):
    code = main(["evolve", "--n-points", "2", "--set", "quadrature.rel_tol=1e-300"])
    assert code == 3
    err = capsys.readouterr().err
    assert "did not converge" in err and "estimates" in err
