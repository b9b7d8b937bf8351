"""Harmonic coherent-state amplitudes and spectra.

chi_q = -i sqrt(q) * integral dt <d(t)> e^{i q omega t}, evaluated by
trapezoidal quadrature on the uniform grid. Over an integer number of cycles
of a Flat drive this is exact to quadrature order for band-limited dipoles,
which is what makes the phase-averaging identities machine-precise. The
ensemble spectrum averages |chi_q|^2 over the drive nodes supplied by a
Husimi sampler with a deterministic ordered reduction.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .dipole import ComplexSeries, ToyDipoleEngine, ToyDipoleParams
from .errors import ConfigError, InsufficientScanError, ResolutionError
from .field import FieldConfig, Fock, TimeGrid
from .phasespace import HusimiSampler, husimi

__all__ = [
    "HarmonicAmplitude",
    "SpectrumResult",
    "harmonic_amplitude",
    "harmonic_amplitudes",
    "spectrum_coherent",
    "spectrum_ensemble",
    "fock_limit_scan",
    "fit_loglog_slope",
    "estimate_cutoff",
]


@dataclass(frozen=True)
class HarmonicAmplitude:
    q: int
    value: complex


@dataclass
class SpectrumResult:
    """Per-order mean photon numbers <a_q^+ a_q>, ordered by q."""

    orders: tuple
    values: tuple
    metadata: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if len(self.orders) != len(self.values):
            raise ConfigError("orders and values must have equal length")
        if any(v < 0 for v in self.values):
            raise ConfigError("mean photon numbers must be >= 0")
        if list(self.orders) != sorted(self.orders):
            raise ConfigError("orders must be sorted ascending")

    def value_at(self, q: int) -> float:
        return self.values[self.orders.index(q)]


def _check_resolution(grid: TimeGrid, q: int, omega: float) -> None:
    nyquist = math.pi / grid.dt
    if q * omega >= nyquist:
        raise ResolutionError(
            f"harmonic q={q} at {q * omega:g} a.u. is at or above the grid "
            f"Nyquist frequency {nyquist:g}; decrease dt"
        )


def harmonic_amplitude(dipole: ComplexSeries, q: int, omega: float) -> HarmonicAmplitude:
    """chi_q of a dipole series by trapezoidal quadrature."""
    if int(q) != q or q < 1:
        raise ConfigError("harmonic order q must be an integer >= 1")
    q = int(q)
    _check_resolution(dipole.grid, q, omega)
    t = dipole.grid.times()
    integrand = dipole.values * np.exp(1j * q * omega * t)
    value = -1j * math.sqrt(q) * np.trapezoid(integrand, dx=dipole.grid.dt)
    return HarmonicAmplitude(q=q, value=complex(value))


def harmonic_amplitudes(dipole: ComplexSeries, q_range, omega: float) -> list[HarmonicAmplitude]:
    return [harmonic_amplitude(dipole, q, omega) for q in q_range]


def _normalize_q_range(q_range) -> tuple:
    orders = tuple(int(q) for q in q_range)
    if not orders:
        raise ConfigError("q_range must be non-empty")
    if any(q < 1 for q in orders):
        raise ConfigError("harmonic orders must be >= 1")
    if list(orders) != sorted(set(orders)):
        raise ConfigError("q_range must be strictly increasing")
    return orders


def _default_grid(config: FieldConfig, q_max: int) -> TimeGrid:
    return TimeGrid.for_spectrum(config.omega, config.n_cycles, q_max)


def _grid_meta(grid: TimeGrid) -> dict:
    return {"t0": grid.t0, "dt": grid.dt, "n": grid.n}


def spectrum_coherent(dipole_engine, config: FieldConfig, q_range,
                      grid: TimeGrid | None = None) -> SpectrumResult:
    """|chi_q|^2 for the single classical field of the configured coherent drive."""
    orders = _normalize_q_range(q_range)
    if grid is None:
        grid = _default_grid(config, orders[-1])
    series = dipole_engine(config, grid)
    values = tuple(abs(harmonic_amplitude(series, q, config.omega).value) ** 2
                   for q in orders)
    return SpectrumResult(orders=orders, values=values, metadata={
        "drive": "coherent",
        "engine": getattr(dipole_engine, "name", "custom"),
        "omega": config.omega,
        "kappa": config.kappa,
        "alpha_abs": config.alpha_abs,
        "phase": config.phase,
        "grid": _grid_meta(grid),
    })


def spectrum_ensemble(q_distribution: HusimiSampler, dipole_engine,
                      config: FieldConfig, q_range,
                      grid: TimeGrid | None = None,
                      threads: int = 1) -> SpectrumResult:
    """<a_q^+ a_q> = sum over drive nodes of weight * |chi_q(node)|^2.

    Each node overrides the component amplitude and phase of `config`; the
    reduction follows node order regardless of the thread count, so output
    is bit-stable.
    """
    orders = _normalize_q_range(q_range)
    if grid is None:
        grid = _default_grid(config, orders[-1])
    nodes = q_distribution.spectral_nodes()

    def node_spectrum(node):
        cfg = dataclasses.replace(config, alpha_abs=node.alpha_abs, phase=node.phase)
        series = dipole_engine(cfg, grid)
        return np.array([abs(harmonic_amplitude(series, q, config.omega).value) ** 2
                         for q in orders])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_node = list(pool.map(node_spectrum, nodes))
    else:
        per_node = [node_spectrum(node) for node in nodes]

    acc = np.zeros(len(orders))
    for node, spec in zip(nodes, per_node):
        acc += node.weight * spec
    drive = type(q_distribution.drive).__name__.lower()
    return SpectrumResult(orders=orders, values=tuple(float(v) for v in acc), metadata={
        "drive": drive,
        "engine": getattr(dipole_engine, "name", "custom"),
        "omega": config.omega,
        "kappa": config.kappa,
        "n_nodes": len(nodes),
        "grid": _grid_meta(grid),
    })


def fock_limit_scan(n: int, kappa_values, params: ToyDipoleParams,
                    base_config: FieldConfig,
                    grid: TimeGrid | None = None,
                    quadrature=None,
                    threads: int = 1) -> list[tuple[float, SpectrumResult]]:
    """Ensemble spectrum of a Fock(n) drive versus kappa, at fixed n.

    Requires a monomial toy response (single term with p = q) so the
    closed-form scaling |c|^2 (2 kappa)^{2q} (n+q)!/n! applies; the log-log
    slope of the spectrum versus kappa is then exactly 2q, which is how the
    vanishing of the Fock-driven spectrum at kappa -> 0 shows up at desk scale.
    """
    kappas = [float(k) for k in kappa_values]
    if len(kappas) < 3:
        raise InsufficientScanError("fock_limit_scan needs at least 3 kappa values")
    if len(params.terms) != 1 or params.terms[0][2] != params.terms[0][0]:
        raise ConfigError("fock_limit_scan requires a monomial toy response (one term, p == q)")
    if n < 0:
        raise ConfigError("photon number n must be >= 0")
    q_mono = params.terms[0][0]
    engine = ToyDipoleEngine(params)
    sampler = husimi(Fock(n), quadrature)
    out = []
    for kappa in kappas:
        cfg = dataclasses.replace(base_config, kappa=kappa)
        g = grid or _default_grid(cfg, q_mono)
        result = spectrum_ensemble(sampler, engine, cfg, [q_mono], grid=g,
                                   threads=threads)
        result.metadata["fock_n"] = n
        out.append((kappa, result))
    return out


def fit_loglog_slope(scan: list[tuple[float, SpectrumResult]], q: int) -> float:
    """Least-squares slope of log(spectrum) versus log(kappa) for order q."""
    kappas = np.array([k for k, _ in scan])
    values = np.array([res.value_at(q) for _, res in scan])
    if np.any(values <= 0):
        raise ConfigError("cannot fit a log-log slope through non-positive spectra")
    slope, _ = np.polyfit(np.log(kappas), np.log(values), 1)
    return float(slope)


def estimate_cutoff(result: SpectrumResult, start_order: int = 1,
                    floor_decades: float = 6.0) -> int:
    """Cutoff estimator: the last bright plateau harmonic.

    Looks at odd orders at or above `start_order` (pass the ionization
    threshold order ceil(Ip/omega) to skip the perturbative region), drops
    everything more than `floor_decades` decades below the odd-harmonic peak,
    and returns the largest order that is a local maximum among consecutive
    odd orders. Beyond the cutoff the spectrum decays monotonically, so the
    last such peak marks the plateau edge.
    """
    pairs = [(q, v) for q, v in zip(result.orders, result.values)
             if q % 2 == 1 and q >= start_order and v > 0]
    if len(pairs) < 3:
        raise ConfigError("need at least 3 odd harmonics above start_order")
    peak = max(v for _, v in pairs)
    floor = peak * 10.0 ** (-floor_decades)
    pairs = [(q, v) for q, v in pairs if v >= floor]
    best = None
    for (q_lo, v_lo), (q, v), (q_hi, v_hi) in zip(pairs, pairs[1:], pairs[2:]):
        if q - q_lo == 2 and q_hi - q == 2 and v > v_lo and v > v_hi:
            best = q
    if best is None:
        raise ConfigError("spectrum has no interior odd-harmonic maximum (no plateau?)")
    return best
