"""Command-line entry point.

Subcommands:

    hhgsim dipole   --config cfg.toml [--out DIR] [--threads N] [-v]
    hhgsim spectrum --config cfg.toml [--out DIR] [--threads N] [-v]
    hhgsim state    --config cfg.toml [--out DIR] [--threads N] [-v]
    hhgsim scenario --config cfg.toml [--out DIR] [--threads N] [-v]

Config files are TOML with strict parsing: unknown keys are rejected and all
physics parameters must be explicit (numerical knobs have documented
defaults). Exit codes: 0 success, 1 validation failure, 2 scenario run with
at least one failing evidence record.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import io as artifact_io
from .dipole import AtomParams, SfaDipoleEngine, ToyDipoleEngine, ToyDipoleParams
from .errors import ConfigError
from .field import (
    Coherent,
    FieldConfig,
    Flat,
    Fock,
    Gaussian,
    PhaseAveraged,
    SinSquared,
    TimeGrid,
)
from .harmonics import spectrum_coherent, spectrum_ensemble
from .phasespace import husimi
from .quantum_state import (
    coherence_report,
    coherent_mode_state,
    phase_averaged_mode_state,
    poisson_n_max,
)
from .scenarios import ScenarioConfig, emit_report, run_scenario

__all__ = ["main", "parse_and_dispatch"]


def _load_config(path: Path) -> dict:
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    with open(path, "rb") as fh:
        try:
            return tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: malformed TOML: {exc}") from exc


def _take(section: dict, section_name: str, key: str, kind, required=True, default=None):
    if key not in section:
        if required:
            raise ConfigError(f"{section_name}.{key}: required key is missing")
        return default
    value = section.pop(key)
    try:
        if kind is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError
            return float(value)
        if kind is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError
            return int(value)
        if kind is str:
            if not isinstance(value, str):
                raise TypeError
            return value
        if kind is list:
            if not isinstance(value, list):
                raise TypeError
            return value
    except TypeError:
        raise ConfigError(
            f"{section_name}.{key}: expected {kind.__name__}, got {value!r}") from None
    raise AssertionError(f"unhandled kind {kind}")


def _reject_unknown(section: dict, section_name: str) -> None:
    if section:
        raise ConfigError(
            f"{section_name}: unknown key(s) {sorted(section)} (strict schema)")


def _pop_section(cfg: dict, name: str, required=True) -> dict:
    if name not in cfg:
        if required:
            raise ConfigError(f"[{name}] section is required")
        return {}
    section = cfg.pop(name)
    if not isinstance(section, dict):
        raise ConfigError(f"[{name}] must be a table")
    return dict(section)


def build_field(cfg: dict) -> FieldConfig:
    sec = _pop_section(cfg, "field")
    kappa = _take(sec, "field", "kappa", float)
    omega = _take(sec, "field", "omega", float)
    alpha_abs = _take(sec, "field", "alpha_abs", float)
    phase = _take(sec, "field", "phase", float)
    n_cycles = _take(sec, "field", "n_cycles", int)
    env_name = _take(sec, "field", "envelope", str)
    if env_name == "flat":
        envelope = Flat()
    elif env_name == "sin2":
        envelope = SinSquared(cycles=_take(sec, "field", "envelope_cycles", int))
    elif env_name == "gaussian":
        envelope = Gaussian(fwhm_cycles=_take(sec, "field", "fwhm_cycles", float))
    else:
        raise ConfigError(
            f"field.envelope: must be 'flat', 'sin2' or 'gaussian', got {env_name!r}")
    _reject_unknown(sec, "field")
    try:
        return FieldConfig(kappa=kappa, omega=omega, alpha_abs=alpha_abs,
                           phase=phase, envelope=envelope, n_cycles=n_cycles)
    except ConfigError as exc:
        raise ConfigError(f"field: {exc}") from exc


def build_engine(cfg: dict):
    sec = _pop_section(cfg, "engine")
    kind = _take(sec, "engine", "kind", str)
    if kind == "toy":
        terms = _take(sec, "engine", "terms", list)
        e_ref = _take(sec, "engine", "e_ref", float)
        _reject_unknown(sec, "engine")
        try:
            params = ToyDipoleParams(terms=tuple(tuple(t) for t in terms), e_ref=e_ref)
        except (ConfigError, ValueError, TypeError) as exc:
            raise ConfigError(f"engine.terms: {exc}") from exc
        return ToyDipoleEngine(params)
    if kind == "sfa":
        ip = _take(sec, "engine", "ip", float)
        epsilon = _take(sec, "engine", "epsilon", float, required=False, default=1e-6)
        window = _take(sec, "engine", "window_cycles", float, required=False, default=1.0)
        _reject_unknown(sec, "engine")
        try:
            return SfaDipoleEngine(AtomParams(ip=ip, epsilon=epsilon), window)
        except ConfigError as exc:
            raise ConfigError(f"engine: {exc}") from exc
    raise ConfigError(f"engine.kind: must be 'toy' or 'sfa', got {kind!r}")


def build_drive(cfg: dict, field_cfg: FieldConfig):
    sec = _pop_section(cfg, "drive", required=False)
    if not sec:
        return Coherent(field_cfg.alpha_abs * np.exp(1j * field_cfg.phase))
    name = "drive"
    kind = _take(sec, name, "kind", str)
    if kind == "coherent":
        _reject_unknown(sec, name)
        return Coherent(field_cfg.alpha_abs * np.exp(1j * field_cfg.phase))
    if kind == "phase_averaged":
        n_phi = _take(sec, name, "n_phi", int)
        _reject_unknown(sec, name)
        return PhaseAveraged(field_cfg.alpha_abs, n_phi)
    if kind == "fock":
        n = _take(sec, name, "n", int)
        _reject_unknown(sec, name)
        return Fock(n)
    raise ConfigError(
        f"drive.kind: must be 'coherent', 'phase_averaged' or 'fock', got {kind!r}")


def build_grid(cfg: dict, field_cfg: FieldConfig, q_max: int | None):
    sec = _pop_section(cfg, "grid", required=False)
    spc = _take(sec, "grid", "samples_per_cycle", int, required=False)
    oversample = _take(sec, "grid", "oversample", int, required=False, default=40)
    _reject_unknown(sec, "grid")
    if spc is None:
        spc = oversample * q_max if q_max else 512
    return TimeGrid.over_cycles(field_cfg.omega, field_cfg.n_cycles, spc)


def _q_range(cfg: dict, section: str):
    sec = _pop_section(cfg, section)
    q_min = _take(sec, section, "q_min", int)
    q_max = _take(sec, section, "q_max", int)
    rest = sec
    if q_min < 1 or q_max < q_min:
        raise ConfigError(f"{section}: need 1 <= q_min <= q_max")
    return range(q_min, q_max + 1), rest


def cmd_dipole(cfg: dict, out_dir: Path, threads: int, verbose: bool) -> int:
    field_cfg = build_field(cfg)
    engine = build_engine(cfg)
    grid = build_grid(cfg, field_cfg, None)
    _reject_unknown(cfg, "config")
    series = engine(field_cfg, grid)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = artifact_io.write_dipole_csv(out_dir / "dipole.csv", series)
    if verbose:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_spectrum(cfg: dict, out_dir: Path, threads: int, verbose: bool) -> int:
    field_cfg = build_field(cfg)
    engine = build_engine(cfg)
    qs, rest = _q_range(cfg, "spectrum")
    _reject_unknown(rest, "spectrum")
    drive = build_drive(cfg, field_cfg)
    grid = build_grid(cfg, field_cfg, max(qs))
    _reject_unknown(cfg, "config")
    if isinstance(drive, Coherent):
        result = spectrum_coherent(engine, field_cfg, qs, grid=grid)
    else:
        result = spectrum_ensemble(husimi(drive), engine, field_cfg, qs,
                                   grid=grid, threads=threads)
    out_dir.mkdir(parents=True, exist_ok=True)
    p1 = artifact_io.write_spectrum_csv(out_dir / "spectrum.csv", result)
    p2 = artifact_io.write_spectrum_json(out_dir / "spectrum.json", result)
    if verbose:
        print(f"wrote {p1}\nwrote {p2}", file=sys.stderr)
    return 0


def cmd_state(cfg: dict, out_dir: Path, threads: int, verbose: bool) -> int:
    from .harmonics import harmonic_amplitude

    field_cfg = build_field(cfg)
    engine = build_engine(cfg)
    sec = _pop_section(cfg, "state")
    orders = [int(q) for q in _take(sec, "state", "orders", list)]
    n_max_cfg = _take(sec, "state", "n_max", int, required=False)
    n_phi = _take(sec, "state", "n_phi", int, required=False, default=256)
    _reject_unknown(sec, "state")
    drive = build_drive(cfg, field_cfg)
    if isinstance(drive, Fock):
        raise ConfigError("state: the fock drive has no per-mode state builder; "
                          "use drive.kind 'coherent' or 'phase_averaged'")
    grid = build_grid(cfg, field_cfg, max(orders))
    _reject_unknown(cfg, "config")

    series = engine(field_cfg, grid)
    out_dir.mkdir(parents=True, exist_ok=True)
    for q in orders:
        chi = harmonic_amplitude(series, q, field_cfg.omega).value
        n_max = n_max_cfg if n_max_cfg is not None else poisson_n_max(abs(chi) ** 2)
        if isinstance(drive, Coherent):
            rho = coherent_mode_state(chi, n_max, q=q)
        else:
            rho = phase_averaged_mode_state(abs(chi), q,
                                            max(n_phi, q * n_max + 1), n_max)
        p1 = artifact_io.write_rho_csv(out_dir / f"rho_q{q}.csv", rho)
        report = coherence_report(rho)
        p2 = artifact_io.write_json(out_dir / f"coherence_q{q}.json", {
            "q": q,
            "chi_abs": abs(chi),
            "l1_offdiagonal": report.l1_offdiagonal,
            "mean_a_re": report.mean_a.real,
            "mean_a_im": report.mean_a.imag,
            "mean_photon": report.mean_photon,
            "photon_distribution": list(report.photon_distribution),
        })
        if verbose:
            print(f"wrote {p1}\nwrote {p2}", file=sys.stderr)
    return 0


def cmd_scenario(cfg: dict, out_dir: Path, threads: int, verbose: bool) -> int:
    field_cfg = build_field(cfg)
    engine = build_engine(cfg)
    sec = _pop_section(cfg, "scenario")
    scenario_id = _take(sec, "scenario", "id", str)
    q_min = _take(sec, "scenario", "q_min", int)
    q_max = _take(sec, "scenario", "q_max", int)
    state_orders = _take(sec, "scenario", "state_orders", list, required=False,
                         default=[])
    n_phi_drive = _take(sec, "scenario", "n_phi_drive", int, required=False, default=16)
    n_phi_state = _take(sec, "scenario", "n_phi_state", int, required=False, default=256)
    n_max = _take(sec, "scenario", "n_max", int, required=False)
    fock_ns = _take(sec, "scenario", "fock_ns", list, required=False, default=[0, 2, 5])
    kappas = _take(sec, "scenario", "kappas", list, required=False,
                   default=[1e-4, 2e-4, 4e-4, 8e-4])
    oversample = _take(sec, "scenario", "oversample", int, required=False, default=40)
    husimi_points = _take(sec, "scenario", "husimi_points", int, required=False,
                          default=200)
    _reject_unknown(sec, "scenario")
    _reject_unknown(cfg, "config")
    if q_min < 1 or q_max < q_min:
        raise ConfigError("scenario: need 1 <= q_min <= q_max")

    scenario_cfg = ScenarioConfig(
        scenario=scenario_id,
        field=field_cfg,
        engine=engine,
        q_range=tuple(range(q_min, q_max + 1)),
        state_orders=tuple(int(q) for q in state_orders),
        n_phi_drive=n_phi_drive,
        n_phi_state=n_phi_state,
        n_max=n_max,
        fock_ns=tuple(int(n) for n in fock_ns),
        kappa_scan=tuple(float(k) for k in kappas),
        oversample=oversample,
        husimi_points=husimi_points,
        threads=threads,
    )
    result = run_scenario(scenario_cfg)
    written = emit_report(result, out_dir / scenario_id)
    for rec in result.records:
        status = "PASS" if rec.passed else "FAIL"
        print(f"[{status}] {result.scenario}: {rec.claim}")
    if verbose:
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return 0 if result.all_passed else 2


_COMMANDS = {
    "dipole": cmd_dipole,
    "spectrum": cmd_spectrum,
    "state": cmd_state,
    "scenario": cmd_scenario,
}


def parse_and_dispatch(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hhgsim",
        description="Quantum-optical high harmonic generation simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, type=Path,
                       help="TOML configuration file")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="output directory (default: ./out)")
        p.add_argument("--threads", type=int, default=1,
                       help="cap on worker parallelism (default 1)")
        p.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 1
    try:
        cfg = _load_config(args.config)
        return _COMMANDS[args.command](cfg, args.out, args.threads, args.verbose)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
