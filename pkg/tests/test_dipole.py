import dataclasses
import math

import numpy as np
import pytest

from hhgsim import (
    AtomParams,
    ConfigError,
    FieldConfig,
    Flat,
    ResolutionError,
    SfaDipoleEngine,
    SinSquared,
    TimeGrid,
    ToyDipoleEngine,
    ToyDipoleParams,
    UnsupportedEnvelopeError,
    covariance_check,
    harmonic_amplitude,
    sfa_dipole,
    toy_dipole,
)

TOY_CFG = FieldConfig(kappa=0.5, omega=1.0, alpha_abs=1.0, phase=0.0,
                      envelope=Flat(), n_cycles=8)
SFA_CFG = FieldConfig(kappa=1e-4, omega=0.057, alpha_abs=265.0, phase=0.0,
                      envelope=Flat(), n_cycles=8)
ATOM = AtomParams(ip=0.5)


def test_toy_single_term_is_cosine():
    params = ToyDipoleParams(terms=((1, 1.0, 1),), e_ref=1.0)
    grid = TimeGrid.over_cycles(1.0, 8, 64)
    d = toy_dipole(TOY_CFG, grid, params)
    assert np.allclose(d.values.real, np.cos(grid.times()), atol=1e-14)
    assert np.all(d.values.imag == 0.0)


def test_toy_phase_is_time_shift():
    params = ToyDipoleParams(terms=((1, 0.4, 1), (3, 0.1, 3)), e_ref=1.0)
    phi = math.pi / 3
    grid = TimeGrid.over_cycles(1.0, 8, 64)
    cfg_phi = dataclasses.replace(TOY_CFG, phase=phi)
    d_phi = toy_dipole(cfg_phi, grid, params)
    d_shift = toy_dipole(TOY_CFG, grid.shifted(phi / TOY_CFG.omega), params)
    assert np.max(np.abs(d_phi.values - d_shift.values)) < 1e-12


def test_toy_power_law_amplitude():
    # term (q=3, c=0.2, p=3) at E = 2*E_ref has cosine amplitude 0.2 * 2^3 = 1.6
    params = ToyDipoleParams(terms=((3, 0.2, 3),), e_ref=0.5)  # E_alpha = 1.0 = 2*e_ref
    grid = TimeGrid.over_cycles(1.0, 8, 256)
    d = toy_dipole(TOY_CFG, grid, params)
    chi3 = harmonic_amplitude(d, 3, 1.0).value
    amplitude = 2.0 * abs(chi3) / (math.sqrt(3.0) * grid.duration)
    assert amplitude == pytest.approx(1.6, rel=1e-12)


def test_toy_linearity_in_coefficients():
    grid = TimeGrid.over_cycles(1.0, 8, 256)
    p1 = ToyDipoleParams(terms=((1, 0.05, 1), (3, 0.03, 3)), e_ref=1.0)
    p2 = ToyDipoleParams(terms=((1, 0.05, 1), (3, 0.06, 3)), e_ref=1.0)
    chi = {q: harmonic_amplitude(toy_dipole(TOY_CFG, grid, p1), q, 1.0).value
           for q in (1, 3)}
    chi2 = {q: harmonic_amplitude(toy_dipole(TOY_CFG, grid, p2), q, 1.0).value
            for q in (1, 3)}
    assert abs(chi2[3] - 2.0 * chi[3]) < 1e-12 * abs(chi[3])
    assert abs(chi2[1] - chi[1]) < 1e-12 * abs(chi[1])


def test_toy_rejects_even_orders_and_bad_powers():
    with pytest.raises(ConfigError):
        ToyDipoleParams(terms=((2, 0.1, 1),), e_ref=1.0)
    with pytest.raises(ConfigError):
        ToyDipoleParams(terms=((1, 0.1, 0),), e_ref=1.0)
    with pytest.raises(ConfigError):
        ToyDipoleParams(terms=(), e_ref=1.0)
    with pytest.raises(ConfigError):
        ToyDipoleParams(terms=((1, 0.1, 1),), e_ref=0.0)


def test_covariance_check_toy_exact():
    engine = ToyDipoleEngine(ToyDipoleParams(terms=((1, 0.4, 1), (5, 0.1, 3)), e_ref=1.0))
    assert covariance_check(engine, TOY_CFG, 0.0) == 0.0
    for dphi in (0.3, math.pi / 2, 2.7):
        assert covariance_check(engine, TOY_CFG, dphi) <= 1e-12


def test_covariance_check_rejects_pulsed_envelope():
    engine = ToyDipoleEngine(ToyDipoleParams(terms=((1, 0.4, 1),), e_ref=1.0))
    cfg = dataclasses.replace(TOY_CFG, envelope=SinSquared(cycles=8))
    with pytest.raises(UnsupportedEnvelopeError):
        covariance_check(engine, cfg, 0.5)


def test_sfa_zero_field_gives_zero_dipole():
    cfg = dataclasses.replace(SFA_CFG, alpha_abs=0.0)
    grid = TimeGrid.over_cycles(cfg.omega, 2, 400)
    d = sfa_dipole(cfg, grid, ATOM)
    assert np.all(d.values == 0.0)


def test_sfa_under_resolved_grid_rejected():
    grid = TimeGrid.over_cycles(SFA_CFG.omega, 2, 40)
    with pytest.raises(ResolutionError):
        sfa_dipole(SFA_CFG, grid, ATOM)


def test_sfa_produces_finite_nonzero_response():
    grid = TimeGrid.over_cycles(SFA_CFG.omega, 2, 600)
    d = sfa_dipole(SFA_CFG, grid, ATOM)
    assert np.all(np.isfinite(d.values.real))
    assert np.max(np.abs(d.values)) > 0.0
    assert np.all(d.values.imag == 0.0)


def test_sfa_flat_envelope_output_is_periodic():
    # full excursion history before the grid start keeps the response periodic
    grid = TimeGrid.over_cycles(SFA_CFG.omega, 3, 600)
    d = sfa_dipole(SFA_CFG, grid, ATOM).values.real
    scale = np.max(np.abs(d))
    assert np.max(np.abs(d[:601] - d[600:1201])) < 1e-10 * scale


def test_sfa_covariance_at_converged_resolution():
    engine = SfaDipoleEngine(ATOM)
    grid = TimeGrid.over_cycles(SFA_CFG.omega, 4, 600)
    dev = covariance_check(engine, SFA_CFG, math.pi / 2, grid=grid)
    assert dev <= 1e-6


def test_atom_params_validation():
    with pytest.raises(ConfigError):
        AtomParams(ip=0.0)
    with pytest.raises(ConfigError):
        AtomParams(ip=0.5, epsilon=0.0)
