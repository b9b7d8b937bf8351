"""Time-dependent dipole expectation value engines.

Two interchangeable engines produce the driven-dipole series that feeds the
harmonic amplitudes:

* ``toy_dipole`` -- a closed-form sum of odd-harmonic cosines with power-law
  amplitude scaling. Exactly phase-covariant by construction, it serves as
  the analytic oracle for every phase-averaging identity.
* ``sfa_dipole`` -- the standard strong-field-approximation dipole: a direct
  double time integral over ionization times with hydrogenic 1s matrix
  elements, quasi-classical action phase and the (t - t')^(3/2) spreading
  factor regularized by ``epsilon``.

Both engines are pure functions of (config, grid) and depend on the field
history only through window differences, so Flat-envelope outputs are
time-translation covariant: dipole[phi](t) = dipole[0](t + phi/omega).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import ConfigError, ResolutionError, UnsupportedEnvelopeError
from .field import FieldConfig, Flat, TimeGrid, classical_field, envelope_values

__all__ = [
    "ComplexSeries",
    "AtomParams",
    "ToyDipoleParams",
    "ToyDipoleEngine",
    "SfaDipoleEngine",
    "toy_dipole",
    "sfa_dipole",
    "covariance_check",
]


@dataclass(frozen=True)
class ComplexSeries:
    """Dipole samples on a uniform grid (values length == grid.n, finite)."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise ConfigError("values length must equal grid.n")
        if not np.all(np.isfinite(v.view(float))):
            raise ConfigError("dipole series contains non-finite entries")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class AtomParams:
    """Single-active-electron atom for the SFA engine.

    ip: ionization potential (a.u.); epsilon regularizes the excursion-time
    spreading denominator near t' = t.
    """

    ip: float
    epsilon: float = 1e-6

    def __post_init__(self):
        if not self.ip > 0:
            raise ConfigError("AtomParams.ip must be > 0")
        if not self.epsilon > 0:
            raise ConfigError("AtomParams.epsilon must be > 0")


@dataclass(frozen=True)
class ToyDipoleParams:
    """Closed-form response: d(t) = sum_j c_j (E/E_ref)^p_j cos(q_j (omega t + phi)).

    Harmonic orders must be odd (centrosymmetric medium); for pulsed
    envelopes the instantaneous amplitude E * envelope(t) enters the power law.
    """

    terms: tuple
    e_ref: float

    def __post_init__(self):
        if not self.e_ref > 0:
            raise ConfigError("ToyDipoleParams.e_ref must be > 0")
        terms = tuple((int(q), float(c), int(p)) for q, c, p in self.terms)
        if not terms:
            raise ConfigError("ToyDipoleParams.terms must be non-empty")
        for q, c, p in terms:
            if q < 1 or q % 2 == 0:
                raise ConfigError(f"toy harmonic order must be odd and >= 1, got {q}")
            if p < 1:
                raise ConfigError(f"toy power must be >= 1, got {p}")
            if not math.isfinite(c):
                raise ConfigError("toy coefficient must be finite")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, q: int, c: float, e_ref: float) -> "ToyDipoleParams":
        """Single term with p = q, giving |chi_q|^2 proportional to E^(2q)."""
        return cls(terms=((q, c, q),), e_ref=e_ref)


def toy_dipole(config: FieldConfig, grid: TimeGrid, params: ToyDipoleParams) -> ComplexSeries:
    t = grid.times()
    env = envelope_values(config, t)
    scale = config.e_alpha / params.e_ref
    d = np.zeros(grid.n)
    for q, c, p in params.terms:
        d += c * (scale * env) ** p * np.cos(q * (config.omega * t + config.phase))
    return ComplexSeries(grid=grid, values=d.astype(complex))


def _hydrogenic_dipole_matrix_element(k: np.ndarray, ip: float) -> np.ndarray:
    # 1s hydrogen-like bound-continuum element: d(k) = i * C * k / (k^2 + 2*Ip)^3
    c = 2.0 ** 3.5 * (2.0 * ip) ** 1.25 / math.pi
    return 1j * c * k / (k * k + 2.0 * ip) ** 3


def sfa_dipole(config: FieldConfig, grid: TimeGrid, atom: AtomParams,
               window_cycles: float = 1.0) -> ComplexSeries:
    """Strong-field-approximation dipole expectation value on the grid.

    For each sample t the ionization-time integral runs over the excursion
    window tau in (0, window_cycles * 2*pi/omega]; the stationary momentum,
    action and field factors are built from cumulative integrals of the
    vector potential, so the cost is O(n * n_window). The field history is
    extended one window before the grid so every output sample sees a full
    excursion window (this keeps Flat-envelope output exactly periodic).
    The real part is the physical dipole; the imaginary part is zero.
    """
    if not window_cycles > 0:
        raise ConfigError("window_cycles must be > 0")
    # Resolve the action phase up to the semiclassical cutoff energy.
    e_amp = config.e_alpha
    u_p = e_amp ** 2 / (4.0 * config.omega ** 2)
    omega_fast = atom.ip + 3.17 * u_p + config.omega
    if grid.dt > 2.0 * math.pi / (20.0 * omega_fast):
        raise ResolutionError(
            f"dt={grid.dt:g} under-resolves the cutoff energy {omega_fast:g} a.u.; "
            f"need dt <= {2.0 * math.pi / (20.0 * omega_fast):g}"
        )
    if e_amp == 0.0:
        return ComplexSeries(grid=grid, values=np.zeros(grid.n, dtype=complex))

    dt = grid.dt
    n_win = max(2, int(round(window_cycles * config.cycle / dt)))
    ext = TimeGrid(t0=grid.t0 - n_win * dt, dt=dt, n=grid.n + n_win)

    e_field = classical_field(config, ext)
    a_pot = -cumulative_trapezoid(e_field, dx=dt, initial=0.0)
    int_a = cumulative_trapezoid(a_pot, dx=dt, initial=0.0)
    int_a2 = cumulative_trapezoid(a_pot * a_pot, dx=dt, initial=0.0)

    now = slice(n_win, ext.n)
    out = np.zeros(grid.n, dtype=complex)
    for j in range(1, n_win + 1):
        tau = j * dt
        ion = slice(n_win - j, ext.n - j)
        p_st = (int_a[ion] - int_a[now]) / tau
        k_rec = p_st + a_pot[now]
        k_ion = p_st + a_pot[ion]
        action = (atom.ip - 0.5 * p_st * p_st) * tau + 0.5 * (int_a2[now] - int_a2[ion])
        spread = (math.pi / (atom.epsilon + 0.5j * tau)) ** 1.5
        term = (spread
                * np.conj(_hydrogenic_dipole_matrix_element(k_rec, atom.ip))
                * _hydrogenic_dipole_matrix_element(k_ion, atom.ip)
                * e_field[ion]
                * np.exp(-1j * action))
        out += (dt if j < n_win else 0.5 * dt) * term
    # integrand vanishes at tau = 0, so the trapezoid endpoint there is free
    dip = 1j * out
    values = 2.0 * dip.real
    if not np.all(np.isfinite(values)):
        bad = int(np.argmax(~np.isfinite(values)))
        raise ResolutionError(
            f"inner SFA integral did not converge at t = {grid.times()[bad]:g}"
        )
    return ComplexSeries(grid=grid, values=values.astype(complex))


class ToyDipoleEngine:
    """Callable engine wrapper: (config, grid) -> ComplexSeries."""

    name = "toy"

    def __init__(self, params: ToyDipoleParams):
        self.params = params

    def __call__(self, config: FieldConfig, grid: TimeGrid) -> ComplexSeries:
        return toy_dipole(config, grid, self.params)


class SfaDipoleEngine:
    name = "sfa"

    def __init__(self, atom: AtomParams, window_cycles: float = 1.0):
        self.atom = atom
        self.window_cycles = window_cycles

    def __call__(self, config: FieldConfig, grid: TimeGrid) -> ComplexSeries:
        return sfa_dipole(config, grid, self.atom, self.window_cycles)


def covariance_check(engine, config: FieldConfig, delta_phi: float,
                     grid: TimeGrid | None = None,
                     samples_per_cycle: int = 256) -> float:
    """Max normalized deviation between the phase-shifted dipole and the
    time-shifted reference: dipole[phi + dphi](t) vs dipole[phi](t + dphi/omega).

    The reference is evaluated on a grid shifted by dphi/omega (rather than
    wrapped), which is exact for the Flat envelope. Returns
    max_t |difference| / max_t |reference|.
    """
    if not isinstance(config.envelope, Flat):
        raise UnsupportedEnvelopeError("covariance_check requires the Flat envelope")
    if grid is None:
        grid = TimeGrid.over_cycles(config.omega, config.n_cycles, samples_per_cycle)
    import dataclasses

    shifted_cfg = dataclasses.replace(config, phase=config.phase + delta_phi)
    d_phase = engine(shifted_cfg, grid).values
    d_ref = engine(config, grid.shifted(delta_phi / config.omega)).values
    scale = float(np.max(np.abs(d_ref)))
    if scale == 0.0:
        return float(np.max(np.abs(d_phase)))
    return float(np.max(np.abs(d_phase - d_ref)) / scale)
