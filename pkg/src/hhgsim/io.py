"""CSV and JSON artifact writers/readers.

All CSV files are comma-separated with a header row, '.' decimal point,
UTF-8 and LF line endings. Floats are written with repr (shortest
round-trip), so identical inputs reproduce byte-identical files. Readers
validate the header and raise SchemaError naming the expected columns.

Schemas (documented for external consumers):

  dipole.csv          t, re_d, im_d
  spectrum.csv        q, mean_photon_number          (q ascending)
  rho_q<q>.csv        n, m, re, im                   (row-major over n, m)
  husimi.csv          re_alpha, im_alpha, q_value
  distributions.csv   n, p_coherent, p_phase_averaged
  fock_scan.csv       kappa, q, mean_photon_number
  evidence.json       {"scenario": ..., "records": [{claim, passed, tolerance, measured}]}
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .harmonics import SpectrumResult
from .quantum_state import ModeDensityMatrix

__all__ = [
    "write_dipole_csv", "read_dipole_csv",
    "write_spectrum_csv", "read_spectrum_csv",
    "write_spectrum_json", "read_spectrum_json",
    "write_rho_csv", "read_rho_csv",
    "write_husimi_csv", "read_husimi_csv",
    "write_distributions_csv", "read_distributions_csv",
    "write_fock_scan_csv", "read_fock_scan_csv",
    "write_json", "read_json",
]


def _fmt(x) -> str:
    return repr(float(x))


def _open_write(path):
    return open(path, "w", encoding="utf-8", newline="\n")


def _check_header(path, row, expected):
    if row != expected:
        raise SchemaError(
            f"{path}: expected columns {expected}, found {row}"
        )


def write_dipole_csv(path, series) -> Path:
    path = Path(path)
    t = series.grid.times()
    with _open_write(path) as fh:
        fh.write("t,re_d,im_d\n")
        for ti, v in zip(t, series.values):
            fh.write(f"{_fmt(ti)},{_fmt(v.real)},{_fmt(v.imag)}\n")
    return path


def read_dipole_csv(path):
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    _check_header(path, rows[0], ["t", "re_d", "im_d"])
    data = np.array([[float(x) for x in row] for row in rows[1:]])
    return data[:, 0], data[:, 1] + 1j * data[:, 2]


def write_spectrum_csv(path, result: SpectrumResult) -> Path:
    path = Path(path)
    with _open_write(path) as fh:
        fh.write("q,mean_photon_number\n")
        for q, v in zip(result.orders, result.values):
            fh.write(f"{q},{_fmt(v)}\n")
    return path


def read_spectrum_csv(path) -> SpectrumResult:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    _check_header(path, rows[0], ["q", "mean_photon_number"])
    orders = tuple(int(r[0]) for r in rows[1:])
    values = tuple(float(r[1]) for r in rows[1:])
    return SpectrumResult(orders=orders, values=values)


def write_spectrum_json(path, result: SpectrumResult) -> Path:
    payload = {
        "orders": list(result.orders),
        "mean_photon_numbers": list(result.values),
        "metadata": result.metadata,
    }
    return write_json(path, payload)


def read_spectrum_json(path) -> SpectrumResult:
    payload = read_json(path)
    try:
        return SpectrumResult(
            orders=tuple(payload["orders"]),
            values=tuple(payload["mean_photon_numbers"]),
            metadata=payload.get("metadata", {}),
        )
    except KeyError as exc:
        raise SchemaError(f"{path}: missing key {exc}") from exc


def write_rho_csv(path, rho: ModeDensityMatrix) -> Path:
    path = Path(path)
    with _open_write(path) as fh:
        fh.write("n,m,re,im\n")
        for n in range(rho.n_max + 1):
            for m in range(rho.n_max + 1):
                v = rho.matrix[n, m]
                fh.write(f"{n},{m},{_fmt(v.real)},{_fmt(v.imag)}\n")
    return path


def read_rho_csv(path, q: int = 1) -> ModeDensityMatrix:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    _check_header(path, rows[0], ["n", "m", "re", "im"])
    body = rows[1:]
    size = int(round(len(body) ** 0.5))
    if size * size != len(body):
        raise SchemaError(f"{path}: expected a square matrix, got {len(body)} rows")
    mat = np.zeros((size, size), dtype=complex)
    for n_s, m_s, re_s, im_s in body:
        mat[int(n_s), int(m_s)] = float(re_s) + 1j * float(im_s)
    return ModeDensityMatrix(q=q, matrix=mat)


def write_husimi_csv(path, re_grid, im_grid, q_values) -> Path:
    path = Path(path)
    re_f = np.asarray(re_grid).ravel()
    im_f = np.asarray(im_grid).ravel()
    q_f = np.asarray(q_values).ravel()
    with _open_write(path) as fh:
        fh.write("re_alpha,im_alpha,q_value\n")
        for r, i, v in zip(re_f, im_f, q_f):
            fh.write(f"{_fmt(r)},{_fmt(i)},{_fmt(v)}\n")
    return path


def read_husimi_csv(path):
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    _check_header(path, rows[0], ["re_alpha", "im_alpha", "q_value"])
    data = np.array([[float(x) for x in row] for row in rows[1:]])
    return data[:, 0], data[:, 1], data[:, 2]


def write_distributions_csv(path, p_coherent, p_phase_averaged) -> Path:
    path = Path(path)
    p_c = np.asarray(p_coherent, dtype=float)
    p_m = np.asarray(p_phase_averaged, dtype=float)
    if p_c.shape != p_m.shape:
        raise SchemaError("photon distributions must share the same support")
    with _open_write(path) as fh:
        fh.write("n,p_coherent,p_phase_averaged\n")
        for n, (a, b) in enumerate(zip(p_c, p_m)):
            fh.write(f"{n},{_fmt(a)},{_fmt(b)}\n")
    return path


def read_distributions_csv(path):
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    _check_header(path, rows[0], ["n", "p_coherent", "p_phase_averaged"])
    data = np.array([[float(x) for x in row] for row in rows[1:]])
    return data[:, 0].astype(int), data[:, 1], data[:, 2]


def write_fock_scan_csv(path, scan) -> Path:
    """scan: list of (kappa, SpectrumResult)."""
    path = Path(path)
    with _open_write(path) as fh:
        fh.write("kappa,q,mean_photon_number\n")
        for kappa, result in scan:
            for q, v in zip(result.orders, result.values):
                fh.write(f"{_fmt(kappa)},{q},{_fmt(v)}\n")
    return path


def read_fock_scan_csv(path):
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    _check_header(path, rows[0], ["kappa", "q", "mean_photon_number"])
    return [(float(k), int(q), float(v)) for k, q, v in rows[1:]]


def write_json(path, payload) -> Path:
    path = Path(path)
    with _open_write(path) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
