"""Phase-space representations of the driving field and classical-limit probes.

The Husimi Q function of each drive doubles as two things:

* a normalized distribution on the complex alpha plane (evaluated in log
  space so large displacements do not underflow), integrated with a radial
  Gauss-Laguerre x uniform-angular product rule;
* an operational kappa -> 0 measure for spectra: the sampler exposes
  discrete drive nodes (amplitude, phase, weight) at fixed physical field
  E = 2*kappa*alpha, which is how the delta-function limits of the
  Gaussian kernels are realized in the pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, logsumexp, roots_laguerre, xlogy

from .errors import ConfigError, InsufficientScanError
from .field import Coherent, DrivingState, Fock, PhaseAveraged, uniform_phases

__all__ = [
    "QuadratureSpec",
    "DriveNode",
    "HusimiSampler",
    "GeneralizedP",
    "husimi",
    "generalized_p",
    "generalized_p_normalization",
    "delta_limit_probe",
    "fock_moment",
    "husimi_grid",
]

LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class QuadratureSpec:
    """Radial Gauss-Laguerre (in s = r^2) x uniform angular product rule."""

    radial_nodes: int = 40
    angular_nodes: int = 64

    def __post_init__(self):
        if self.radial_nodes < 2 or self.angular_nodes < 2:
            raise ConfigError("quadrature needs at least 2 nodes per direction")


@lru_cache(maxsize=16)
def _laguerre(m: int):
    x, w = roots_laguerre(m)
    return x, w


@dataclass(frozen=True)
class DriveNode:
    """One coherent component of the operational drive decomposition."""

    alpha_abs: float
    phase: float
    weight: float


class HusimiSampler:
    """Q function of a driving state plus its quadrature and drive nodes."""

    def __init__(self, drive: DrivingState, quadrature: QuadratureSpec | None = None):
        if not isinstance(drive, (Coherent, PhaseAveraged, Fock)):
            raise ConfigError(f"unknown driving state {drive!r}")
        self.drive = drive
        self.quadrature = quadrature or QuadratureSpec()

    def log_q(self, alpha) -> np.ndarray:
        a = np.asarray(alpha, dtype=complex)
        d = self.drive
        if isinstance(d, Coherent):
            return -np.abs(a - d.alpha) ** 2 - LOG_PI
        if isinstance(d, PhaseAveraged):
            centers = d.alpha_abs * np.exp(1j * uniform_phases(d.n_phi))
            # stack over the discrete phases, reduce with logsumexp
            diffs = -np.abs(a[..., None] - centers) ** 2
            return logsumexp(diffs, axis=-1) - math.log(d.n_phi) - LOG_PI
        mod2 = np.abs(a) ** 2
        return xlogy(d.n, mod2) - mod2 - gammaln(d.n + 1.0) - LOG_PI

    def q(self, alpha) -> np.ndarray:
        return np.exp(self.log_q(alpha))

    def normalization(self) -> float:
        """Integral of Q over the alpha plane under the sampler's quadrature."""
        s, w = _laguerre(self.quadrature.radial_nodes)
        theta = 2.0 * math.pi * np.arange(self.quadrature.angular_nodes) \
            / self.quadrature.angular_nodes
        alpha = np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]
        # int Q d^2a = int dtheta int Q(sqrt(s) e^{i theta}) ds / 2
        #            ~ (pi / m_theta) sum_jk w_j e^{s_j} Q(alpha_jk)
        log_terms = (self.log_q(alpha) + s[:, None] + np.log(w)[:, None]
                     + LOG_PI - math.log(self.quadrature.angular_nodes))
        return float(np.exp(logsumexp(log_terms)))

    def spectral_nodes(self) -> list[DriveNode]:
        """Drive decomposition used for ensemble spectra (kappa -> 0 form).

        Coherent and phase-averaged drives collapse onto their classical
        amplitude(s) (the Gaussian factors become delta functions at fixed
        E = 2*kappa*alpha); the Fock drive keeps its full radial Q profile,
        integrated exactly by Gauss-Laguerre for polynomial responses.
        """
        d = self.drive
        if isinstance(d, Coherent):
            return [DriveNode(abs(d.alpha), float(np.angle(d.alpha)), 1.0)]
        if isinstance(d, PhaseAveraged):
            return [DriveNode(d.alpha_abs, float(ph), 1.0 / d.n_phi)
                    for ph in uniform_phases(d.n_phi)]
        s, w = _laguerre(self.quadrature.radial_nodes)
        log_radial = np.log(w) + xlogy(d.n, s) - gammaln(d.n + 1.0)
        radial_w = np.exp(log_radial)
        m_theta = self.quadrature.angular_nodes
        nodes = []
        for r, wr in zip(np.sqrt(s), radial_w):
            for ph in 2.0 * math.pi * np.arange(m_theta) / m_theta:
                nodes.append(DriveNode(float(r), float(ph), float(wr / m_theta)))
        return nodes


def husimi(drive: DrivingState, quadrature: QuadratureSpec | None = None) -> HusimiSampler:
    return HusimiSampler(drive, quadrature)


class GeneralizedP:
    """Positive generalized-P weight P(alpha, beta*) of a driving state.

    P(alpha, beta*) = (1/4pi) exp(-|alpha - beta*|^2 / 4) * Q((alpha + beta*)/2):
    positive and finite everywhere, peaked on the diagonal beta* = alpha with
    Gaussian width 2 in amplitude units.
    """

    def __init__(self, sampler: HusimiSampler):
        self.sampler = sampler

    def log_value(self, alpha, beta_conj) -> np.ndarray:
        a = np.asarray(alpha, dtype=complex)
        b = np.asarray(beta_conj, dtype=complex)
        return (-np.abs(a - b) ** 2 / 4.0 - math.log(4.0 * math.pi)
                + self.sampler.log_q((a + b) / 2.0))

    def __call__(self, alpha, beta_conj) -> np.ndarray:
        return np.exp(self.log_value(alpha, beta_conj))


def generalized_p(drive: DrivingState, quadrature: QuadratureSpec | None = None) -> GeneralizedP:
    return GeneralizedP(husimi(drive, quadrature))


def generalized_p_normalization(gp: GeneralizedP,
                                center_spec: QuadratureSpec | None = None,
                                offset_spec: QuadratureSpec | None = None) -> float:
    """Nested 4D quadrature of P over d^2alpha d^2beta.

    Integrates in midpoint/offset coordinates v = (alpha + beta*)/2 and
    u = alpha - beta* (unit Jacobian), evaluating the full P at every
    reconstructed (alpha, beta*) pair; exact normalization is 1.
    """
    center_spec = center_spec or QuadratureSpec()
    offset_spec = offset_spec or QuadratureSpec(radial_nodes=24, angular_nodes=32)

    s_v, w_v = _laguerre(center_spec.radial_nodes)
    th_v = 2.0 * math.pi * np.arange(center_spec.angular_nodes) / center_spec.angular_nodes
    v = (np.sqrt(s_v)[:, None] * np.exp(1j * th_v)[None, :]).ravel()
    log_wv = (np.log(w_v)[:, None] + s_v[:, None] - math.log(2.0)
              + math.log(2.0 * math.pi / center_spec.angular_nodes)
              + np.zeros((1, center_spec.angular_nodes))).ravel()

    s_u, w_u = _laguerre(offset_spec.radial_nodes)
    th_u = 2.0 * math.pi * np.arange(offset_spec.angular_nodes) / offset_spec.angular_nodes
    u = (2.0 * np.sqrt(s_u)[:, None] * np.exp(1j * th_u)[None, :]).ravel()
    log_wu = (np.log(w_u)[:, None] + s_u[:, None] + math.log(2.0)
              + math.log(2.0 * math.pi / offset_spec.angular_nodes)
              + np.zeros((1, offset_spec.angular_nodes))).ravel()

    alpha = v[:, None] + u[None, :] / 2.0
    beta_conj = v[:, None] - u[None, :] / 2.0
    log_p = gp.log_value(alpha, beta_conj)
    return float(np.exp(logsumexp(log_p + log_wv[:, None] + log_wu[None, :])))


def delta_limit_probe(kappa_values, f, center: complex = 0.0 + 0.0j,
                      quadrature: QuadratureSpec | None = None) -> list[tuple[float, float]]:
    """Convergence probe of the Gaussian -> delta limit at fixed field amplitude.

    For each kappa the normalized Gaussian kernel of per-component variance
    4*kappa^2 (the Q-function kernel written in physical field units) is
    integrated against f over the complex field plane, and the deviation
    |integral - f(center)| is returned. The error scales as O(kappa^2) for
    smooth f and vanishes identically for f = const.
    """
    kappas = [float(k) for k in kappa_values]
    if len(kappas) < 3:
        raise InsufficientScanError("delta_limit_probe needs at least 3 kappa values")
    if any(k <= 0 for k in kappas):
        raise ConfigError("kappa values must be > 0")
    spec = quadrature or QuadratureSpec()
    s, w = _laguerre(spec.radial_nodes)
    theta = 2.0 * math.pi * np.arange(spec.angular_nodes) / spec.angular_nodes
    unit = np.exp(1j * theta)
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            ref = complex(f(complex(center)))
    except (ZeroDivisionError, OverflowError, FloatingPointError) as exc:
        raise ConfigError(f"test functional diverges at the center point: {exc}") from exc
    if not np.isfinite([ref.real, ref.imag]).all():
        raise ConfigError("test functional diverges at the center point")
    out = []
    for kappa in kappas:
        radius = np.sqrt(8.0 * kappa * kappa * s)
        points = center + radius[:, None] * unit[None, :]
        vals = np.asarray(f(points), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ConfigError("test functional diverges on the probe nodes")
        integral = float((w[:, None] * vals).sum() / spec.angular_nodes)
        out.append((kappa, abs(integral - ref.real)))
    return out


def fock_moment(n: int, q: int) -> float:
    """(n+q)!/n! = integral of Q_n(alpha) |alpha|^(2q) over the plane.

    Small arguments use the exact integer product; large ones are evaluated
    in log space via gammaln, so no intermediate factorial ever overflows
    (the value itself becomes inf only beyond float range).
    """
    if n < 0 or q < 0:
        raise ConfigError("fock_moment requires n, q >= 0")
    if n + q <= 170:
        return float(math.prod(range(n + 1, n + q + 1)))
    log_val = float(gammaln(n + q + 1.0) - gammaln(n + 1.0))
    if log_val > math.log(np.finfo(float).max):
        return math.inf
    return math.exp(log_val)


def husimi_grid(sampler: HusimiSampler, half_width: float | None = None,
                points: int = 200):
    """Square Cartesian probe grid of Q values for export and plotting.

    Default half-width covers the drive support: |alpha0| + 6 for coherent
    style drives, sqrt(n) + 6 for the Fock drive.
    """
    if half_width is None:
        d = sampler.drive
        if isinstance(d, Coherent):
            half_width = abs(d.alpha) + 6.0
        elif isinstance(d, PhaseAveraged):
            half_width = d.alpha_abs + 6.0
        else:
            half_width = math.sqrt(d.n) + 6.0
    axis = np.linspace(-half_width, half_width, points)
    re, im = np.meshgrid(axis, axis)
    q_vals = sampler.q(re + 1j * im)
    return re, im, q_vals
