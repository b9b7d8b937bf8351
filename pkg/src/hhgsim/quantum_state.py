"""Harmonic-mode quantum states in a truncated Fock basis.

Builds coherent-state density matrices, the phase-averaged (diagonal) mode
state and its Poisson closed form, plus the coherence and photon-statistics
diagnostics that separate field-level from spectrum-level observables. All
factorials and Poisson weights are assembled in log space so amplitudes with
|chi|^2 of order 10^3 stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.special import gammaln

from .errors import AliasingError, ConfigError, TruncationError

__all__ = [
    "ModeDensityMatrix",
    "CoherenceReport",
    "poisson_n_max",
    "poisson_tail",
    "coherent_mode_state",
    "phase_averaged_mode_state",
    "poisson_mode_state",
    "l1_coherence",
    "mean_photon",
    "photon_distribution",
    "mean_field_amplitude",
    "purity",
    "coherence_report",
]

# Trace may deviate from 1 only by the truncated Poisson tail (constructors
# guarantee trace = truncated mass to 1e-10). Truncations losing more than
# MAX_TRUNCATION_LOSS of the state are rejected outright; that bound admits
# every contract instance (|chi| <= 3 at n_max = 24 loses ~2.5e-5) while
# catching grossly undersized bases.
TRACE_TOL = 1e-10
MAX_TRUNCATION_LOSS = 1e-4
HERMITICITY_TOL = 1e-12


def poisson_n_max(mean: float) -> int:
    """Shared truncation rule: smallest cutoff with Poisson tail mass < 1e-12."""
    if mean < 0:
        raise ConfigError("Poisson mean must be >= 0")
    return int(math.ceil(mean + 12.0 * math.sqrt(mean + 1.0)))


def poisson_log_pmf(n: np.ndarray, mean: float) -> np.ndarray:
    n = np.asarray(n)
    if mean == 0.0:
        out = np.full(n.shape, -np.inf)
        out[n == 0] = 0.0
        return out
    return n * math.log(mean) - mean - gammaln(n + 1.0)


def poisson_tail(mean: float, n_max: int) -> float:
    """Probability mass above n_max for a Poisson of the given mean."""
    pmf = np.exp(poisson_log_pmf(np.arange(n_max + 1), mean))
    return max(0.0, 1.0 - float(pmf.sum()))


@dataclass(frozen=True)
class ModeDensityMatrix:
    """Truncated Fock-basis density matrix rho_{nm} of one harmonic mode.

    Invariants enforced at construction: Hermiticity to 1e-12; real,
    non-negative diagonal entries; trace within the truncation allowance of 1
    (the constructors reproduce the truncated Poisson mass to 1e-10, and any
    truncation losing more than MAX_TRUNCATION_LOSS is rejected upstream).
    """

    q: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ConfigError("density matrix must be square and non-empty")
        if self.q < 1:
            raise ConfigError("harmonic order q must be >= 1")
        if not np.all(np.isfinite(m.view(float))):
            raise ConfigError("density matrix entries must be finite")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITICITY_TOL:
            raise ConfigError(f"density matrix not Hermitian: max |rho - rho^+| = {herm:.3e}")
        diag = np.diagonal(m)
        if np.max(np.abs(diag.imag)) > HERMITICITY_TOL:
            raise ConfigError("diagonal entries must be real")
        if np.min(diag.real) < -1e-14:
            raise ConfigError("diagonal entries must be >= -1e-14")
        tr = float(diag.real.sum())
        if not (1.0 - 2.0 * MAX_TRUNCATION_LOSS <= tr <= 1.0 + TRACE_TOL):
            raise ConfigError(
                f"trace {tr!r} outside the truncation allowance around 1")
        object.__setattr__(self, "matrix", m)

    @property
    def n_max(self) -> int:
        return self.matrix.shape[0] - 1


@dataclass(frozen=True)
class CoherenceReport:
    """Summary diagnostics of one mode state."""

    l1_offdiagonal: float
    mean_a: complex
    mean_photon: float
    photon_distribution: np.ndarray = dc_field(repr=False)


def _check_truncation(mean: float, n_max: int) -> None:
    # Looser than the 1e-12 selection rule so every contract instance stays
    # constructible; gross truncation still errors with a suggested basis size.
    tail = poisson_tail(mean, n_max)
    if tail > MAX_TRUNCATION_LOSS:
        raise TruncationError(
            f"n_max={n_max} truncates {tail:.3e} of the photon distribution "
            f"(mean {mean:g}); suggested n_max >= {poisson_n_max(mean)}",
            suggested_n_max=poisson_n_max(mean),
        )


def _coherent_amplitudes(chi: complex, n_max: int) -> np.ndarray:
    """Fock amplitudes c_n = exp(-|chi|^2/2) chi^n / sqrt(n!), in log space."""
    n = np.arange(n_max + 1)
    mod2 = abs(chi) ** 2
    if mod2 == 0.0:
        c = np.zeros(n_max + 1, dtype=complex)
        c[0] = 1.0
        return c
    log_mod = -0.5 * mod2 + n * math.log(abs(chi)) - 0.5 * gammaln(n + 1.0)
    return np.exp(log_mod) * np.exp(1j * n * np.angle(chi))


def coherent_mode_state(chi: complex, n_max: int | None = None,
                        q: int = 1) -> ModeDensityMatrix:
    """Pure coherent state |chi><chi| in the truncated basis:
    rho_{nm} = exp(-|chi|^2) chi^n (chi*)^m / sqrt(n! m!).
    """
    mean = abs(chi) ** 2
    if n_max is None:
        n_max = poisson_n_max(mean)
    _check_truncation(mean, n_max)
    c = _coherent_amplitudes(chi, n_max)
    return ModeDensityMatrix(q=q, matrix=np.outer(c, c.conj()))


def phase_averaged_mode_state(chi_abs: float, q: int, n_phi: int,
                              n_max: int | None = None) -> ModeDensityMatrix:
    """Uniform mixture (1/n_phi) sum_k |chi_k><chi_k| with chi_k = e^{-i q phi_k} chi_abs.

    For n_phi > q*n_max every off-diagonal element is a complete sum of roots
    of unity and cancels exactly, so the result is diagonal and equals the
    Poisson state of mean chi_abs^2. A smaller n_phi would alias some
    off-diagonal phase sums back to 1; that is rejected up front.
    """
    if chi_abs < 0:
        raise ConfigError("chi_abs must be >= 0")
    if q < 1:
        raise ConfigError("q must be >= 1")
    mean = chi_abs * chi_abs
    if n_max is None:
        n_max = poisson_n_max(mean)
    if n_phi <= q * n_max:
        raise AliasingError(
            f"n_phi={n_phi} aliases: need n_phi > q*n_max = {q * n_max} "
            f"(smallest admissible n_phi is {q * n_max + 1})",
            min_n_phi=q * n_max + 1,
        )
    _check_truncation(mean, n_max)
    acc = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for k in range(n_phi):
        phi_k = 2.0 * math.pi * k / n_phi
        c = _coherent_amplitudes(chi_abs * np.exp(-1j * q * phi_k), n_max)
        acc += np.outer(c, c.conj())
    acc /= n_phi
    # enforce exact Hermiticity against accumulated roundoff
    acc = 0.5 * (acc + acc.conj().T)
    return ModeDensityMatrix(q=q, matrix=acc)


def poisson_mode_state(mean: float, n_max: int | None = None, q: int = 1) -> ModeDensityMatrix:
    """Diagonal state with rho_{nn} = exp(-mean) mean^n / n!."""
    if mean < 0:
        raise ConfigError("mean must be >= 0")
    if n_max is None:
        n_max = poisson_n_max(mean)
    _check_truncation(mean, n_max)
    pmf = np.exp(poisson_log_pmf(np.arange(n_max + 1), mean))
    return ModeDensityMatrix(q=q, matrix=np.diag(pmf.astype(complex)))


def l1_coherence(rho: ModeDensityMatrix) -> float:
    """Sum of |rho_{nm}| over n != m; zero iff the state is Fock-diagonal."""
    a = np.abs(rho.matrix)
    return float(a.sum() - np.trace(a))


def mean_photon(rho: ModeDensityMatrix) -> float:
    n = np.arange(rho.n_max + 1)
    return float((n * np.diagonal(rho.matrix).real).sum())


def photon_distribution(rho: ModeDensityMatrix) -> np.ndarray:
    return np.diagonal(rho.matrix).real.copy()


def mean_field_amplitude(rho: ModeDensityMatrix) -> complex:
    """Tr[a rho] = sum_n sqrt(n+1) rho_{n+1,n}."""
    n = np.arange(rho.n_max)
    sub = np.diagonal(rho.matrix, offset=-1)  # rho_{n+1, n}
    return complex((np.sqrt(n + 1.0) * sub).sum())


def purity(rho: ModeDensityMatrix) -> float:
    return float((np.abs(rho.matrix) ** 2).sum())


def coherence_report(rho: ModeDensityMatrix) -> CoherenceReport:
    return CoherenceReport(
        l1_offdiagonal=l1_coherence(rho),
        mean_a=mean_field_amplitude(rho),
        mean_photon=mean_photon(rho),
        photon_distribution=photon_distribution(rho),
    )
