"""Figure rendering for simulator artifacts.

Five figure kinds, one per artifact family:

  spectrum            log-y harmonic spectrum; several inputs overlay
  rho_heatmap         |rho_nm| magnitude heatmap, annotated with q and n_max
  husimi              Husimi Q heatmap over the complex alpha plane
  photon_dist_compare side-by-side photon distributions (pure vs mixed)
  fock_scan           log-log spectrum vs kappa with fitted slope

Rendering is read-only: input files are parsed, never touched.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from . import readers

__all__ = ["FIGURE_KINDS", "FigureSpec", "render"]

FIGURE_KINDS = ("spectrum", "rho_heatmap", "husimi", "photon_dist_compare",
                "fock_scan")

plt.rcParams.update({
    "figure.figsize": (6.0, 3.8),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
})


@dataclass
class FigureSpec:
    kind: str
    inputs: list
    output: Path
    title: str | None = None
    labels: list = field(default_factory=list)
    q: int | None = None  # rho_heatmap annotation override

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"figure kind must be one of {FIGURE_KINDS}, "
                             f"got {self.kind!r}")
        self.inputs = [Path(p) for p in self.inputs]
        if not self.inputs:
            raise ValueError("at least one input file is required")
        self.output = Path(self.output)
        for p in self.inputs:
            if not p.exists():
                raise FileNotFoundError(f"input file not found: {p}")


def _label_for(spec: FigureSpec, i: int) -> str:
    if i < len(spec.labels):
        return spec.labels[i]
    return spec.inputs[i].parent.name or spec.inputs[i].stem


def _finish(fig, ax, spec: FigureSpec):
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, bbox_inches="tight")
    plt.close(fig)
    return spec.output


def _render_spectrum(spec: FigureSpec):
    fig, ax = plt.subplots()
    floor = None
    for i, path in enumerate(spec.inputs):
        q, v = readers.read_spectrum(path)
        positive = v[v > 0]
        if positive.size:
            floor = min(floor, positive.min()) if floor else positive.min()
        ax.plot(q, np.maximum(v, 1e-300), marker="o", ms=3, lw=1.2,
                label=_label_for(spec, i))
    ax.set_yscale("log")
    if floor is not None:
        ax.set_ylim(bottom=floor * 1e-4)
    ax.set_xlabel("harmonic order q")
    ax.set_ylabel(r"$\langle a_q^\dagger a_q \rangle$")
    if len(spec.inputs) > 1 or spec.labels:
        ax.legend(frameon=False)
    return _finish(fig, ax, spec)


def _infer_q(path: Path) -> int | None:
    match = re.search(r"rho_q(\d+)", path.name)
    return int(match.group(1)) if match else None


def _render_rho_heatmap(spec: FigureSpec):
    mat = readers.read_rho(spec.inputs[0])
    n_max = mat.shape[0] - 1
    mag = np.abs(mat)
    floor = max(mag.max(), 1e-300) * 1e-16
    fig, ax = plt.subplots(figsize=(4.8, 4.2))
    ax.grid(False)
    im = ax.imshow(np.maximum(mag, floor), origin="lower",
                   norm=LogNorm(vmin=floor, vmax=max(mag.max(), floor * 10)),
                   cmap="viridis")
    fig.colorbar(im, ax=ax, label=r"$|\rho_{nm}|$")
    q = spec.q if spec.q is not None else _infer_q(spec.inputs[0])
    q_text = f"q = {q}, " if q is not None else ""
    ax.text(0.02, 0.98, f"{q_text}n_max = {n_max}", transform=ax.transAxes,
            va="top", ha="left", color="white", fontsize=9)
    ax.set_xlabel("m")
    ax.set_ylabel("n")
    return _finish(fig, ax, spec)


def _render_husimi(spec: FigureSpec):
    re_grid, im_grid, q_vals = readers.read_husimi(spec.inputs[0])
    fig, ax = plt.subplots(figsize=(4.8, 4.2))
    ax.grid(False)
    mesh = ax.pcolormesh(re_grid, im_grid, q_vals, shading="auto", cmap="magma")
    fig.colorbar(mesh, ax=ax, label=r"$Q(\alpha)$")
    ax.set_xlabel(r"Re $\alpha$")
    ax.set_ylabel(r"Im $\alpha$")
    ax.set_aspect("equal")
    return _finish(fig, ax, spec)


def _render_photon_dist_compare(spec: FigureSpec):
    n, p_coh, p_mix = readers.read_distributions(spec.inputs[0])
    fig, ax = plt.subplots()
    width = 0.4
    ax.bar(n - width / 2, p_coh, width=width, label="coherent $|\\chi_q\\rangle$")
    ax.bar(n + width / 2, p_mix, width=width, label="phase-averaged $\\rho_q$")
    ax.set_xlabel("photon number n")
    ax.set_ylabel("p(n)")
    ax.legend(frameon=False)
    return _finish(fig, ax, spec)


def _render_fock_scan(spec: FigureSpec):
    rows = readers.read_fock_scan(spec.inputs[0])
    fig, ax = plt.subplots()
    orders = sorted({q for _, q, _ in rows})
    for q in orders:
        pts = [(k, v) for k, qq, v in rows if qq == q and v > 0]
        if not pts:
            continue
        kappas = np.array([k for k, _ in pts])
        values = np.array([v for _, v in pts])
        label = f"q = {q}"
        if len(pts) >= 2:
            slope = np.polyfit(np.log(kappas), np.log(values), 1)[0]
            label += f" (slope {slope:.2f})"
        ax.plot(kappas, values, marker="o", ms=4, lw=1.2, label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"$\kappa$ (a.u.)")
    ax.set_ylabel(r"$\langle a_q^\dagger a_q \rangle$")
    ax.legend(frameon=False)
    return _finish(fig, ax, spec)


_RENDERERS = {
    "spectrum": _render_spectrum,
    "rho_heatmap": _render_rho_heatmap,
    "husimi": _render_husimi,
    "photon_dist_compare": _render_photon_dist_compare,
    "fock_scan": _render_fock_scan,
}


def render(spec: FigureSpec) -> Path:
    """Render one figure and return the written image path."""
    return _RENDERERS[spec.kind](spec)
