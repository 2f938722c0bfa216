"""Figure-rendering report path: CSV tables with matplotlib plots alongside.

Everything a desk review needs in one directory: the level diagram, the
first few eigenfunctions, the charge-density cross-validation, and
optionally the oracle mismatch scan and the parity residual diagnostics.
All other CLI paths emit data only; figures live here.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import spinor as spinor_mod
from . import wavefunction as wf
from .oracle import DEFAULT_OPTIONS, OracleOptions, count_sign_changes, scan_mismatch
from .spectrum import CouplingConfig, spectrum


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _spectrum_outputs(config: CouplingConfig, n_max: int, outdir: str) -> list[str]:
    states = spectrum(config, n_max)
    rows = [
        [st.n, st.energy, st.s, st.n + st.s, st.lam, config.m - abs(st.energy)]
        for st in states
    ]
    csv_path = os.path.join(outdir, "spectrum.csv")
    _write_csv(csv_path, ["n", "energy", "s", "gamma", "lambda", "binding_energy"], rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [st.n for st in states]
    es = [st.energy / config.m for st in states]
    ax.plot(ns, es, "o-", label="bound levels")
    ax.axhline(1.0, color="k", ls="--", lw=0.8, label="continuum edge |E| = m")
    ax.axhline(-1.0, color="k", ls="--", lw=0.8)
    ax.set_xlabel("n")
    ax.set_ylabel("E / m")
    ax.set_title(f"m={config.m}, g1={config.g1}, g2={config.g2}")
    ax.legend(loc="best")
    fig.tight_layout()
    png_path = os.path.join(outdir, "spectrum.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _wavefunction_outputs(config: CouplingConfig, n_max: int, outdir: str) -> list[str]:
    levels = list(range(min(n_max, 3) + 1))
    efs = [wf.eigenfunction(config, n) for n in levels]
    xs = wf.default_grid(efs[-1], samples=801)
    header = ["x"] + [f"phi_n{n}" for n in levels]
    columns = [xs]
    fig, ax = plt.subplots(figsize=(6, 4))
    for n, ef in zip(levels, efs):
        phi, _ = wf.evaluate_arrays(ef, xs)
        columns.append(phi)
        ax.plot(xs, phi, label=f"n={n}")
    rows = [list(map(float, row)) for row in np.column_stack(columns)]
    csv_path = os.path.join(outdir, "wavefunctions.csv")
    _write_csv(csv_path, header, rows)
    ax.set_xlabel("x")
    ax.set_ylabel("phi(x)")
    ax.set_title("odd-parity eigenfunctions")
    ax.legend(loc="best")
    fig.tight_layout()
    png_path = os.path.join(outdir, "wavefunctions.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _current_outputs(config: CouplingConfig, outdir: str) -> list[str]:
    ef = wf.eigenfunction(config, 0)
    xs = wf.default_grid(ef, samples=401)
    rows = []
    j0m, j0c = [], []
    for x in xs:
        x = float(x)
        if config.spin.value == 0:
            sp = spinor_mod.assemble_spin0(ef, x)
        else:
            sp = spinor_mod.assemble_spin1(ef, spinor_mod.DEFAULT_CHANNEL_WEIGHTS, x)
        matrix = spinor_mod.current(sp)
        closed = spinor_mod.current_closed_form(ef, spinor_mod.DEFAULT_CHANNEL_WEIGHTS, x)
        rows.append([x, matrix.j0, closed.j0, matrix.j1, closed.j1])
        j0m.append(matrix.j0)
        j0c.append(closed.j0)
    csv_path = os.path.join(outdir, "current.csv")
    _write_csv(csv_path, ["x", "j0_matrix", "j0_closed", "j1_matrix", "j1_closed"], rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, j0m, label="J0 (matrix definition)")
    ax.plot(xs, j0c, "--", label="J0 (closed form)")
    ax.set_xlabel("x")
    ax.set_ylabel("charge density")
    ax.set_title("ground-state current cross-validation")
    ax.legend(loc="best")
    fig.tight_layout()
    png_path = os.path.join(outdir, "current.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _scan_outputs(config: CouplingConfig, outdir: str, points: int) -> list[str]:
    opts = OracleOptions(ode_tol=1e-8)
    edge = 0.999 * config.m
    grid = np.linspace(-edge, edge, points)
    scan = scan_mismatch(config, grid, opts)
    rows = [
        [p.energy, p.mismatch, -1 if p.node_count is None else p.node_count, p.error or ""]
        for p in scan
    ]
    csv_path = os.path.join(outdir, "oracle_scan.csv")
    _write_csv(csv_path, ["energy", "mismatch", "node_count", "error"], rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    es = [p.energy for p in scan if p.error is None]
    ws = [p.mismatch for p in scan if p.error is None]
    ax.plot(es, ws, lw=1.0)
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("trial E / m")
    ax.set_ylabel("matching mismatch")
    ax.set_title(f"mismatch scan: {count_sign_changes(scan)} sign change(s)")
    fig.tight_layout()
    png_path = os.path.join(outdir, "oracle_scan.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _parity_outputs(config: CouplingConfig, outdir: str) -> list[str]:
    ef = wf.eigenfunction(config, 0)
    eps = (1e-2, 1e-3, 1e-4, 1e-5)
    scan = wf.connection_scan(ef, 0.1, eps)
    rows = [
        [0.1, e, ro, re, scan["slope_even"], scan["slope_expected"]]
        for e, ro, re in zip(scan["eps"], scan["r_odd"], scan["r_even"])
    ]
    csv_path = os.path.join(outdir, "parity.csv")
    _write_csv(csv_path, ["delta", "eps", "r_odd", "r_even", "slope_even_fit", "slope_expected"], rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    abs_even = [abs(v) for v in scan["r_even"]]
    abs_odd = [max(abs(v), 1e-300) for v in scan["r_odd"]]
    ax.loglog(eps, abs_even, "o-", label="|R| even extension")
    ax.loglog(eps, abs_odd, "s-", label="|R| odd extension")
    ax.set_xlabel("cutoff eps")
    ax.set_ylabel("connection-condition residual")
    ax.set_title(
        f"even-case slope {scan['slope_even']:+.3f} (expected {scan['slope_expected']:+.3f})"
    )
    ax.legend(loc="best")
    fig.tight_layout()
    png_path = os.path.join(outdir, "parity.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def render_report(
    config: CouplingConfig,
    n_max: int,
    outdir: str,
    with_scan: bool = False,
    with_parity: bool = False,
    scan_points: int = 120,
) -> dict:
    """Write the CSV+PNG bundle and return a manifest of produced files."""
    os.makedirs(outdir, exist_ok=True)
    files: list[str] = []
    files += _spectrum_outputs(config, n_max, outdir)
    files += _wavefunction_outputs(config, n_max, outdir)
    files += _current_outputs(config, outdir)
    if with_scan:
        files += _scan_outputs(config, outdir, scan_points)
    if with_parity:
        files += _parity_outputs(config, outdir)
    return {
        "outdir": outdir,
        "params": {"m": config.m, "g1": config.g1, "g2": config.g2, "spin": config.spin.value, "n_max": n_max},
        "files": files,
    }
