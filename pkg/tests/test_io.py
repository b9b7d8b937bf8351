import numpy as np
import pytest

from hhgsim import (
    ComplexSeries,
    SchemaError,
    SpectrumResult,
    TimeGrid,
    coherent_mode_state,
    husimi,
    husimi_grid,
    Coherent,
)
from hhgsim.io import (
    read_dipole_csv,
    read_distributions_csv,
    read_fock_scan_csv,
    read_husimi_csv,
    read_json,
    read_rho_csv,
    read_spectrum_csv,
    read_spectrum_json,
    write_dipole_csv,
    write_distributions_csv,
    write_fock_scan_csv,
    write_husimi_csv,
    write_json,
    write_rho_csv,
    write_spectrum_csv,
    write_spectrum_json,
)


def test_dipole_roundtrip(tmp_path):
    grid = TimeGrid(t0=0.25, dt=0.125, n=16)
    values = np.exp(1j * np.linspace(0, 3, 16)) * np.linspace(0.1, 1.0, 16)
    series = ComplexSeries(grid=grid, values=values)
    path = write_dipole_csv(tmp_path / "dipole.csv", series)
    t, v = read_dipole_csv(path)
    assert np.array_equal(t, grid.times())
    assert np.array_equal(v, values)


def test_spectrum_roundtrip(tmp_path):
    spec = SpectrumResult(orders=(1, 2, 3), values=(0.5, 0.0, 1.25e-17),
                          metadata={"engine": "toy", "omega": 1.0})
    p_csv = write_spectrum_csv(tmp_path / "spectrum.csv", spec)
    back = read_spectrum_csv(p_csv)
    assert back.orders == spec.orders
    assert back.values == spec.values
    p_json = write_spectrum_json(tmp_path / "spectrum.json", spec)
    back2 = read_spectrum_json(p_json)
    assert back2.orders == spec.orders
    assert back2.values == spec.values
    assert back2.metadata["engine"] == "toy"


def test_rho_roundtrip(tmp_path):
    rho = coherent_mode_state(0.8 + 0.3j, n_max=12, q=3)
    path = write_rho_csv(tmp_path / "rho_q3.csv", rho)
    back = read_rho_csv(path, q=3)
    assert back.q == 3
    assert np.array_equal(back.matrix, rho.matrix)


def test_husimi_roundtrip(tmp_path):
    re, im, q_vals = husimi_grid(husimi(Coherent(1.0 + 0j)), half_width=3.0, points=21)
    path = write_husimi_csv(tmp_path / "husimi.csv", re, im, q_vals)
    r2, i2, v2 = read_husimi_csv(path)
    assert np.array_equal(r2, re.ravel())
    assert np.array_equal(i2, im.ravel())
    assert np.array_equal(v2, q_vals.ravel())


def test_distributions_roundtrip(tmp_path):
    p_c = np.array([0.5, 0.3, 0.2])
    p_m = np.array([0.5, 0.3, 0.2])
    path = write_distributions_csv(tmp_path / "d.csv", p_c, p_m)
    n, a, b = read_distributions_csv(path)
    assert list(n) == [0, 1, 2]
    assert np.array_equal(a, p_c)
    assert np.array_equal(b, p_m)


def test_fock_scan_roundtrip(tmp_path):
    scan = [(1e-4, SpectrumResult(orders=(3,), values=(2.5e-19,))),
            (2e-4, SpectrumResult(orders=(3,), values=(1.6e-17,)))]
    path = write_fock_scan_csv(tmp_path / "scan.csv", scan)
    rows = read_fock_scan_csv(path)
    assert rows == [(1e-4, 3, 2.5e-19), (2e-4, 3, 1.6e-17)]


def test_json_roundtrip_and_determinism(tmp_path):
    payload = {"b": 1.5, "a": [1, 2, 3], "c": {"z": True, "y": None}}
    p1 = write_json(tmp_path / "x.json", payload)
    data1 = p1.read_bytes()
    assert read_json(p1) == payload
    p2 = write_json(tmp_path / "x2.json", payload)
    assert p2.read_bytes() == data1


def test_csv_rewrite_is_byte_identical(tmp_path):
    spec = SpectrumResult(orders=(1, 3), values=(0.123456789012345, 7e-30))
    p1 = write_spectrum_csv(tmp_path / "s1.csv", spec)
    p2 = write_spectrum_csv(tmp_path / "s2.csv", spec)
    assert p1.read_bytes() == p2.read_bytes()


def test_schema_errors_name_columns(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("wrong,header\n1,2\n", encoding="utf-8")
    with pytest.raises(SchemaError) as err:
        read_spectrum_csv(bad)
    assert "mean_photon_number" in str(err.value)
    with pytest.raises(SchemaError):
        read_rho_csv(bad)
    with pytest.raises(SchemaError):
        read_dipole_csv(bad)
    with pytest.raises(SchemaError):
        read_husimi_csv(bad)
    with pytest.raises(SchemaError):
        read_distributions_csv(bad)
    with pytest.raises(SchemaError):
        read_fock_scan_csv(bad)


def test_rho_csv_requires_square_matrix(tmp_path):
    bad = tmp_path / "rho.csv"
    bad.write_text("n,m,re,im\n0,0,1.0,0.0\n0,1,0.0,0.0\n", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_rho_csv(bad)


def test_csv_line_endings_are_lf(tmp_path):
    spec = SpectrumResult(orders=(1,), values=(1.0,))
    path = write_spectrum_csv(tmp_path / "s.csv", spec)
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")
