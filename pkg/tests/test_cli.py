import json
from pathlib import Path

import pytest

from hhgsim.cli import parse_and_dispatch
from hhgsim.io import read_dipole_csv, read_rho_csv, read_spectrum_csv

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

TOY_SPECTRUM = """
[field]
kappa = 0.5
omega = 1.0
alpha_abs = 1.0
phase = 0.0
envelope = "flat"
n_cycles = 8

[engine]
kind = "toy"
e_ref = 1.0
terms = [[1, 0.05, 1], [3, 0.03, 3]]

[drive]
kind = "phase_averaged"
n_phi = 8

[spectrum]
q_min = 1
q_max = 5
"""


def run_cli(*args):
    return parse_and_dispatch(list(args))


def test_scenario_happy_path(tmp_path, capsys):
    code = run_cli("scenario", "--config", str(CONFIGS / "b_toy.toml"),
                   "--out", str(tmp_path))
    assert code == 0
    out_dir = tmp_path / "B_phase_averaged"
    assert (out_dir / "evidence.json").exists()
    assert (out_dir / "spectrum.csv").exists()
    captured = capsys.readouterr()
    assert "[PASS]" in captured.out
    assert "[FAIL]" not in captured.out
    payload = json.loads((out_dir / "evidence.json").read_text(encoding="utf-8"))
    assert payload["all_passed"] is True
    for rec in payload["records"]:
        assert "tolerance" in rec


def test_spectrum_subcommand_monotone_q(tmp_path):
    cfg = tmp_path / "spec.toml"
    cfg.write_text(TOY_SPECTRUM, encoding="utf-8")
    code = run_cli("spectrum", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 0
    spec = read_spectrum_csv(tmp_path / "out" / "spectrum.csv")
    assert list(spec.orders) == sorted(spec.orders)
    assert (tmp_path / "out" / "spectrum.json").exists()


def test_dipole_subcommand(tmp_path):
    cfg = tmp_path / "d.toml"
    cfg.write_text(TOY_SPECTRUM.split("[drive]")[0], encoding="utf-8")
    code = run_cli("dipole", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 0
    t, v = read_dipole_csv(tmp_path / "out" / "dipole.csv")
    assert len(t) == len(v) > 0


def test_state_subcommand_roundtrip(tmp_path):
    code = run_cli("state", "--config", str(CONFIGS / "state_toy.toml"),
                   "--out", str(tmp_path / "out"))
    assert code == 0
    rho = read_rho_csv(tmp_path / "out" / "rho_q3.csv", q=3)
    assert rho.n_max >= 1
    report = json.loads((tmp_path / "out" / "coherence_q3.json").read_text())
    assert report["l1_offdiagonal"] <= 1e-12


def test_zero_kappa_exits_1_naming_field(tmp_path, capsys):
    cfg_text = TOY_SPECTRUM.replace("kappa = 0.5", "kappa = 0.0")
    cfg = tmp_path / "bad.toml"
    cfg.write_text(cfg_text, encoding="utf-8")
    code = run_cli("spectrum", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 1
    assert "kappa" in capsys.readouterr().err


def test_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text(TOY_SPECTRUM + "\n[grid]\nnot_a_key = 1\n", encoding="utf-8")
    code = run_cli("spectrum", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 1
    assert "not_a_key" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    code = run_cli("spectrum", "--config", str(tmp_path / "nope.toml"))
    assert code == 1
    assert "not found" in capsys.readouterr().err


def test_missing_required_key(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text(TOY_SPECTRUM.replace("omega = 1.0\n", ""), encoding="utf-8")
    code = run_cli("spectrum", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 1
    assert "field.omega" in capsys.readouterr().err


def test_failing_evidence_exits_2(tmp_path, capsys):
    # a pulsed envelope breaks exact phase covariance, so scenario B's
    # spectrum-invariance record fails at its 1e-9 tolerance
    cfg_text = (CONFIGS / "b_toy.toml").read_text(encoding="utf-8").replace(
        'envelope = "flat"', 'envelope = "gaussian"\nfwhm_cycles = 2.0')
    cfg = tmp_path / "b_pulsed.toml"
    cfg.write_text(cfg_text, encoding="utf-8")
    code = run_cli("scenario", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 2
    assert "[FAIL]" in capsys.readouterr().out


def test_threads_flag_is_deterministic(tmp_path):
    out1 = tmp_path / "t1"
    out2 = tmp_path / "t2"
    assert run_cli("scenario", "--config", str(CONFIGS / "b_toy.toml"),
                   "--out", str(out1), "--threads", "1") == 0
    assert run_cli("scenario", "--config", str(CONFIGS / "b_toy.toml"),
                   "--out", str(out2), "--threads", "3") == 0
    d1 = out1 / "B_phase_averaged"
    d2 = out2 / "B_phase_averaged"
    for p1 in sorted(d1.iterdir()):
        assert p1.read_bytes() == (d2 / p1.name).read_bytes()


def test_fock_drive_state_rejected(tmp_path, capsys):
    cfg_text = TOY_SPECTRUM.replace(
        '[drive]\nkind = "phase_averaged"\nn_phi = 8',
        '[drive]\nkind = "fock"\nn = 2').replace(
        "[spectrum]\nq_min = 1\nq_max = 5", "[state]\norders = [1]")
    cfg = tmp_path / "s.toml"
    cfg.write_text(cfg_text, encoding="utf-8")
    code = run_cli("state", "--config", str(cfg), "--out", str(tmp_path / "out"))
    assert code == 1
    assert "fock" in capsys.readouterr().err.lower()
