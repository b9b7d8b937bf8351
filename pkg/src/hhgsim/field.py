"""Classical driving field and driving-state boundary conditions.

All quantities are in atomic units. The project-wide sign convention for the
real field of a coherent component with amplitude ``|alpha0|`` and phase
``phi`` is

    E_cl(t) = -2 * kappa * |alpha0| * sin(omega * t + phi) * envelope(t)

so that a phase shift acts as a time advance: E[phi](t) = E[0](t + phi/omega)
for the Flat envelope. Every phase-covariance identity downstream relies on
this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConfigError, TruncationError
from .quantum_state import (
    ModeDensityMatrix,
    poisson_mode_state,
    poisson_n_max,
    poisson_tail,
)

__all__ = [
    "Flat",
    "SinSquared",
    "Gaussian",
    "Envelope",
    "FieldConfig",
    "TimeGrid",
    "Coherent",
    "PhaseAveraged",
    "Fock",
    "DrivingState",
    "uniform_phases",
    "classical_field",
    "mean_driving_field",
    "driving_mixture_fock_diagonal",
]


@dataclass(frozen=True)
class Flat:
    """Constant envelope; the field is exactly periodic with period 2*pi/omega."""


@dataclass(frozen=True)
class SinSquared:
    """sin^2 pulse envelope spanning `cycles` optical cycles, zero outside."""

    cycles: int

    def __post_init__(self):
        if self.cycles < 1:
            raise ConfigError("SinSquared.cycles must be >= 1")


@dataclass(frozen=True)
class Gaussian:
    """Gaussian envelope with the given intensity-FWHM in optical cycles."""

    fwhm_cycles: float

    def __post_init__(self):
        if not self.fwhm_cycles > 0:
            raise ConfigError("Gaussian.fwhm_cycles must be > 0")


Envelope = Union[Flat, SinSquared, Gaussian]


@dataclass(frozen=True)
class FieldConfig:
    """Driving-field parameters of one coherent component (atomic units).

    The physical peak field of the component is E_alpha = 2 * kappa * alpha_abs.
    """

    kappa: float
    omega: float
    alpha_abs: float
    phase: float = 0.0
    envelope: Envelope = Flat()
    n_cycles: int = 8

    def __post_init__(self):
        if not self.kappa > 0:
            raise ConfigError("FieldConfig.kappa must be > 0")
        if not self.omega > 0:
            raise ConfigError("FieldConfig.omega must be > 0")
        if self.alpha_abs < 0:
            raise ConfigError("FieldConfig.alpha_abs must be >= 0")
        if self.n_cycles < 1:
            raise ConfigError("FieldConfig.n_cycles must be >= 1")
        if not isinstance(self.envelope, (Flat, SinSquared, Gaussian)):
            raise ConfigError("FieldConfig.envelope must be Flat, SinSquared or Gaussian")

    @property
    def e_alpha(self) -> float:
        return 2.0 * self.kappa * self.alpha_abs

    @property
    def cycle(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def duration(self) -> float:
        return self.n_cycles * self.cycle


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid with n samples: t_k = t0 + k*dt, k = 0..n-1."""

    t0: float
    dt: float
    n: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError("TimeGrid.dt must be > 0")
        if self.n < 2:
            raise ConfigError("TimeGrid.n must be >= 2")

    @classmethod
    def over_cycles(cls, omega: float, n_cycles: int, samples_per_cycle: int,
                    t0: float = 0.0) -> "TimeGrid":
        """Grid whose total span (n-1)*dt is exactly n_cycles optical cycles.

        This is the constructor to use with the Flat envelope: the exact
        phase-averaging cancellations hold only over integer cycles.
        """
        if not omega > 0:
            raise ConfigError("omega must be > 0")
        if n_cycles < 1 or samples_per_cycle < 2:
            raise ConfigError("need n_cycles >= 1 and samples_per_cycle >= 2")
        dt = 2.0 * math.pi / omega / samples_per_cycle
        return cls(t0=t0, dt=dt, n=n_cycles * samples_per_cycle + 1)

    @classmethod
    def for_spectrum(cls, omega: float, n_cycles: int, q_max: int,
                     oversample: int = 40, t0: float = 0.0) -> "TimeGrid":
        """Integer-cycle grid resolving harmonic q_max with `oversample` points
        per period of the fastest harmonic."""
        return cls.over_cycles(omega, n_cycles, max(2, oversample * q_max), t0=t0)

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def duration(self) -> float:
        return (self.n - 1) * self.dt

    def shifted(self, delta_t: float) -> "TimeGrid":
        return TimeGrid(t0=self.t0 + delta_t, dt=self.dt, n=self.n)

    def spans_integer_cycles(self, omega: float, rtol: float = 1e-9) -> bool:
        cycles = self.duration * omega / (2.0 * math.pi)
        return abs(cycles - round(cycles)) <= rtol * max(1.0, cycles)


@dataclass(frozen=True)
class Coherent:
    """Pure coherent driving state |alpha>."""

    alpha: complex


@dataclass(frozen=True)
class PhaseAveraged:
    """Uniform mixture of |alpha_abs * e^{i*phi_k}> over n_phi equidistant phases."""

    alpha_abs: float
    n_phi: int

    def __post_init__(self):
        if self.alpha_abs < 0:
            raise ConfigError("PhaseAveraged.alpha_abs must be >= 0")
        if self.n_phi < 2:
            raise ConfigError("PhaseAveraged.n_phi must be >= 2")


@dataclass(frozen=True)
class Fock:
    """Photon number state |n>."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ConfigError("Fock.n must be >= 0")


DrivingState = Union[Coherent, PhaseAveraged, Fock]


def uniform_phases(n_phi: int) -> np.ndarray:
    """The n_phi phases 2*pi*k/n_phi, k = 0..n_phi-1."""
    return 2.0 * math.pi * np.arange(n_phi) / n_phi


def envelope_values(config: FieldConfig, t: np.ndarray) -> np.ndarray:
    """Envelope samples; pulsed envelopes are anchored to the [0, duration] window."""
    t = np.asarray(t, dtype=float)
    env = config.envelope
    if isinstance(env, Flat):
        return np.ones_like(t)
    if isinstance(env, SinSquared):
        width = env.cycles * config.cycle
        inside = (t >= 0.0) & (t <= width)
        out = np.zeros_like(t)
        out[inside] = np.sin(np.pi * t[inside] / width) ** 2
        return out
    # Gaussian, centered on the nominal pulse window
    center = 0.5 * config.duration
    fwhm = env.fwhm_cycles * config.cycle
    return np.exp(-4.0 * math.log(2.0) * ((t - center) / fwhm) ** 2)


def classical_field(config: FieldConfig, grid: TimeGrid) -> np.ndarray:
    """Samples of E_cl(t) = -2*kappa*|alpha0|*sin(omega*t + phi) * envelope(t)."""
    t = grid.times()
    carrier = -config.e_alpha * np.sin(config.omega * t + config.phase)
    return carrier * envelope_values(config, t)


def field_at(config: FieldConfig, t: float, phase: float | None = None,
             alpha_abs: float | None = None) -> float:
    """Point evaluation of the classical field, optionally overriding the
    component amplitude/phase (used for mixture components)."""
    a = config.alpha_abs if alpha_abs is None else alpha_abs
    ph = config.phase if phase is None else phase
    carrier = -2.0 * config.kappa * a * math.sin(config.omega * t + ph)
    return carrier * float(envelope_values(config, np.asarray([t]))[0])


def mean_driving_field(state: DrivingState, config: FieldConfig, t: float) -> float:
    """Mean electric field of the driving state at time t.

    A coherent state yields the classical field of its amplitude and phase.
    The discrete phase mixture averages its component fields (the uniform
    phase sum cancels to machine precision) and a number state carries no
    mean field at all since <n|a|n> = 0.
    """
    if isinstance(state, Coherent):
        return field_at(config, t, phase=float(np.angle(state.alpha)),
                        alpha_abs=abs(state.alpha))
    if isinstance(state, PhaseAveraged):
        phases = uniform_phases(state.n_phi)
        comps = [field_at(config, t, phase=ph, alpha_abs=state.alpha_abs)
                 for ph in phases]
        return float(np.mean(comps))
    if isinstance(state, Fock):
        return 0.0
    raise ConfigError(f"unknown driving state {state!r}")


def driving_mixture_fock_diagonal(alpha_abs: float, n_max: int | None = None) -> ModeDensityMatrix:
    """Fock-basis density matrix of the phase-averaged drive: diagonal with
    Poisson entries exp(-|a0|^2) |a0|^(2n) / n!.

    n_max defaults to the shared Poisson truncation rule (tail mass < 1e-12);
    an explicit n_max that truncates more than 1e-12 of probability raises
    TruncationError with the smallest admissible value.
    """
    if alpha_abs < 0:
        raise ConfigError("alpha_abs must be >= 0")
    mean = alpha_abs * alpha_abs
    required = poisson_n_max(mean)
    if n_max is None:
        n_max = required
    else:
        tail = poisson_tail(mean, n_max)
        if tail >= 1e-12:
            raise TruncationError(
                f"n_max={n_max} leaves Poisson tail mass {tail:.3e} >= 1e-12; "
                f"use n_max >= {required}",
                suggested_n_max=required,
            )
    return poisson_mode_state(mean, n_max, q=1)
