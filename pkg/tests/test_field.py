import math

import numpy as np
import pytest

from hhgsim import (
    Coherent,
    ConfigError,
    FieldConfig,
    Flat,
    Fock,
    Gaussian,
    PhaseAveraged,
    SinSquared,
    TimeGrid,
    TruncationError,
    classical_field,
    driving_mixture_fock_diagonal,
    l1_coherence,
    mean_driving_field,
    mean_photon,
)


def make_config(**kw):
    base = dict(kappa=0.5, omega=1.0, alpha_abs=1.0, phase=0.0,
                envelope=Flat(), n_cycles=4)
    base.update(kw)
    return FieldConfig(**base)


def test_zero_amplitude_gives_zero_series():
    cfg = make_config(alpha_abs=0.0)
    grid = TimeGrid.over_cycles(1.0, 4, 64)
    assert np.all(classical_field(cfg, grid) == 0.0)


def test_closed_form_value_at_quarter_period():
    # E(t) = -2*kappa*|a0|*sin(omega t) at t = pi/2 -> -1.0
    cfg = make_config()
    grid = TimeGrid(t0=math.pi / 2, dt=0.1, n=2)
    assert classical_field(cfg, grid)[0] == pytest.approx(-1.0, abs=1e-14)


def test_phase_pi_shifts_by_half_period():
    cfg0 = make_config()
    cfg_pi = make_config(phase=math.pi)
    grid = TimeGrid.over_cycles(1.0, 4, 128)
    e0 = classical_field(cfg0, grid)
    e_pi = classical_field(cfg_pi, grid)
    half = 64  # samples per half period
    assert np.allclose(e_pi[:-half], e0[half:], atol=1e-12)


def test_flat_envelope_exactly_periodic():
    cfg = make_config()
    grid = TimeGrid.over_cycles(1.0, 4, 128)
    e = classical_field(cfg, grid)
    assert np.allclose(e[:129], e[128:257], atol=1e-12)


def test_field_phase_covariance_is_time_advance():
    # phase phi equals phase 0 evaluated at t + phi/omega, pointwise to 1e-12
    omega = 0.7
    for phi in (0.3, math.pi / 3, 2.1):
        cfg_phi = make_config(omega=omega, phase=phi)
        cfg_0 = make_config(omega=omega, phase=0.0)
        grid = TimeGrid.over_cycles(omega, 4, 128)
        e_phi = classical_field(cfg_phi, grid)
        e_shift = classical_field(cfg_0, grid.shifted(phi / omega))
        assert np.max(np.abs(e_phi - e_shift)) < 1e-12


def test_mean_field_coherent_matches_classical_value():
    cfg = make_config()
    assert mean_driving_field(Coherent(1.0 + 0j), cfg, math.pi / 2) == pytest.approx(-1.0)


def test_mean_field_phase_averaged_cancels_at_any_time():
    cfg = make_config()
    state = PhaseAveraged(alpha_abs=5.0, n_phi=16)
    for t in np.linspace(0.0, cfg.duration, 25):
        assert abs(mean_driving_field(state, cfg, float(t))) < 1e-13


@pytest.mark.parametrize("n_phi", [2, 3, 7, 16, 64])
def test_mean_field_phase_averaged_any_n_phi(n_phi):
    cfg = make_config()
    state = PhaseAveraged(alpha_abs=2.0, n_phi=n_phi)
    for t in (0.0, 0.37, 4.4):
        assert abs(mean_driving_field(state, cfg, t)) < 1e-13


def test_mean_field_fock_is_exactly_zero():
    cfg = make_config()
    assert mean_driving_field(Fock(3), cfg, 0.123) == 0.0


def test_fock_mixture_vacuum():
    rho = driving_mixture_fock_diagonal(0.0)
    assert rho.matrix[0, 0] == pytest.approx(1.0)
    assert rho.n_max == 12  # truncation rule at mean 0


def test_fock_mixture_poisson_entry():
    rho = driving_mixture_fock_diagonal(1.0)
    assert rho.matrix[0, 0].real == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_fock_mixture_mean_photon_and_trace():
    for a in (0.5, 1.0, 2.5):
        rho = driving_mixture_fock_diagonal(a)
        assert mean_photon(rho) == pytest.approx(a * a, abs=1e-10)
        assert float(np.trace(rho.matrix).real) == pytest.approx(1.0, abs=1e-12)


def test_fock_mixture_is_diagonal_with_zero_coherence():
    rho = driving_mixture_fock_diagonal(1.7)
    off = rho.matrix - np.diag(np.diagonal(rho.matrix))
    assert np.all(off == 0.0)
    assert l1_coherence(rho) == 0.0


def test_fock_mixture_rejects_small_truncation():
    with pytest.raises(TruncationError) as err:
        driving_mixture_fock_diagonal(3.0, n_max=10)
    assert err.value.suggested_n_max is not None


def test_invalid_configs_rejected():
    with pytest.raises(ConfigError):
        make_config(kappa=0.0)
    with pytest.raises(ConfigError):
        make_config(omega=-1.0)
    with pytest.raises(ConfigError):
        make_config(alpha_abs=-0.1)
    with pytest.raises(ConfigError):
        make_config(n_cycles=0)
    with pytest.raises(ConfigError):
        TimeGrid(t0=0.0, dt=0.0, n=10)
    with pytest.raises(ConfigError):
        TimeGrid(t0=0.0, dt=0.1, n=1)
    with pytest.raises(ConfigError):
        SinSquared(cycles=0)
    with pytest.raises(ConfigError):
        Gaussian(fwhm_cycles=0.0)
    with pytest.raises(ConfigError):
        PhaseAveraged(alpha_abs=1.0, n_phi=1)
    with pytest.raises(ConfigError):
        Fock(-1)


def test_grid_over_cycles_spans_integer_cycles():
    grid = TimeGrid.over_cycles(0.057, 8, 600)
    assert grid.spans_integer_cycles(0.057)
    assert grid.n == 8 * 600 + 1


def test_envelopes_modulate_field():
    grid = TimeGrid.over_cycles(1.0, 4, 256)
    flat = classical_field(make_config(), grid)
    sin2 = classical_field(make_config(envelope=SinSquared(cycles=4)), grid)
    gauss = classical_field(make_config(envelope=Gaussian(fwhm_cycles=1.5)), grid)
    # pulsed envelopes vanish (sin2) or are strongly suppressed (gaussian) at the edges
    assert abs(sin2[0]) == 0.0
    assert abs(gauss[0]) < 1e-3 * np.max(np.abs(gauss))
    assert np.max(np.abs(sin2)) <= np.max(np.abs(flat)) + 1e-12
