"""Readers for the simulator's documented CSV/JSON artifacts.

This package deliberately parses the files itself instead of importing the
simulator: the CSV/JSON schemas are the interface. Any header mismatch
raises SchemaError naming the expected columns.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

__all__ = [
    "SchemaError",
    "read_spectrum",
    "read_rho",
    "read_husimi",
    "read_distributions",
    "read_fock_scan",
    "read_evidence",
]


class SchemaError(ValueError):
    """Input file does not match its documented schema."""


def _rows(path: Path, expected_header: list[str]) -> list[list[str]]:
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != expected_header:
        found = rows[0] if rows else []
        raise SchemaError(f"{path}: expected columns {expected_header}, found {found}")
    return rows[1:]


def read_spectrum(path) -> tuple[np.ndarray, np.ndarray]:
    """spectrum.csv -> (orders, mean photon numbers)."""
    body = _rows(Path(path), ["q", "mean_photon_number"])
    q = np.array([int(r[0]) for r in body])
    v = np.array([float(r[1]) for r in body])
    return q, v


def read_rho(path) -> np.ndarray:
    """rho_q<q>.csv -> complex density matrix."""
    body = _rows(Path(path), ["n", "m", "re", "im"])
    size = int(round(math.sqrt(len(body))))
    if size * size != len(body):
        raise SchemaError(f"{path}: expected a square matrix, got {len(body)} rows")
    mat = np.zeros((size, size), dtype=complex)
    for n_s, m_s, re_s, im_s in body:
        mat[int(n_s), int(m_s)] = float(re_s) + 1j * float(im_s)
    return mat


def read_husimi(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """husimi.csv -> (re grid, im grid, Q values), reshaped to the square grid."""
    body = _rows(Path(path), ["re_alpha", "im_alpha", "q_value"])
    data = np.array([[float(x) for x in r] for r in body])
    size = int(round(math.sqrt(data.shape[0])))
    if size * size != data.shape[0]:
        raise SchemaError(f"{path}: expected a square probe grid, got {data.shape[0]} rows")
    shape = (size, size)
    return (data[:, 0].reshape(shape), data[:, 1].reshape(shape),
            data[:, 2].reshape(shape))


def read_distributions(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """distributions_q<q>.csv -> (n, p_coherent, p_phase_averaged)."""
    body = _rows(Path(path), ["n", "p_coherent", "p_phase_averaged"])
    n = np.array([int(r[0]) for r in body])
    a = np.array([float(r[1]) for r in body])
    b = np.array([float(r[2]) for r in body])
    return n, a, b


def read_fock_scan(path) -> list[tuple[float, int, float]]:
    """fock_scan_n<n>.csv -> [(kappa, q, value)]."""
    body = _rows(Path(path), ["kappa", "q", "mean_photon_number"])
    return [(float(k), int(q), float(v)) for k, q, v in body]


def read_evidence(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("schema") != "hhgsim-evidence@1":
        raise SchemaError(f"{path}: not an hhgsim evidence file")
    return payload
