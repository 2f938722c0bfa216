"""Independent eigenvalue oracle: two-sided shooting on the effective ODE.

Re-derives the bound-state energies without the closed-form spectrum by
integrating

    Phi'' = [2m alpha / x^2 - 2m q(E) / x - 2m E_eff(E)] Phi

outward from x_min with the Frobenius seed Phi ~ x^s (1 + c1 x),
c1 = -m q / s, and inward from x_max with the leading decaying asymptotic
Phi ~ e^(-lam x / 2) (lam x)^gamma.  The potential is energy dependent
(q = E g1 / m), so the matching mismatch is treated directly as a function
of E: one root-find, no outer fixed-point loop.

The mismatch is the Wronskian of the two unit-normalized solution vectors
(Phi, Phi'/lam) at the matching point -- the antisymmetrized log-derivative
difference, scaled to stay bounded -- so its sign changes and only its sign
changes mark eigenvalues.  Brackets are located on a scan grid uniform in
gamma(E) = E g1 / sqrt(m^2 - E^2) (a monotone reparametrization of (-m, m)
chosen so consecutive levels are isolated; the roots themselves are still
found purely by shooting) and refined by bisection.

The matching point sits near -2 alpha / |q| (where the inverse-linear and
inverse-square terms balance), clamped to lam * x in [1e-3, 10]; any
interior point works, this one keeps both integrations short.  For q = 0
the fallback is lam * x = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    BracketExhaustedError,
    NoRootInBracketError,
    OdeIntegrationError,
)
from .spectrum import CouplingConfig, effective_params, exponent_s


@dataclass(frozen=True)
class OracleOptions:
    """Numerical knobs for the shooting solver.

    ``x_min_factor`` and ``x_max_factor`` are multiples of 1/lam(E), making
    the integration window energy adaptive; ``energy_tol`` is relative to m.
    """

    x_min_factor: float = 1e-6
    x_max_factor: float = 50.0
    ode_tol: float = 1e-11
    energy_tol: float = 1e-10
    scan_step: float = 0.25
    max_bracket_refinements: int = 2
    null_scan_points: int = 161
    node_samples_out: int = 250
    node_samples_in: int = 600
    match_z_lo: float = 1e-3
    match_z_hi: float = 10.0


DEFAULT_OPTIONS = OracleOptions()


@dataclass(frozen=True)
class OracleResult:
    n: int
    energy: float
    iterations: int
    mismatch: float
    bracket: tuple[float, float]
    node_count: int


@dataclass(frozen=True)
class ScanPoint:
    energy: float
    mismatch: float
    node_count: int | None
    error: str | None = None


def _match_point(p, opts: OracleOptions) -> float:
    if p.q != 0.0:
        x_star = -2.0 * p.alpha / abs(p.q)
    else:
        x_star = 1.0 / p.lam
    z_star = min(max(p.lam * x_star, opts.match_z_lo), opts.match_z_hi)
    return z_star / p.lam


def _shoot(config: CouplingConfig, energy: float, opts: OracleOptions, want_nodes: bool = False):
    """Two-sided integration at trial energy; returns (mismatch, node_count)."""
    p = effective_params(config, energy)
    m = config.m
    lam = p.lam
    x_min = opts.x_min_factor / lam
    x_max = opts.x_max_factor / lam
    x_star = _match_point(p, opts)

    ca = 2.0 * m * p.alpha
    cb = -2.0 * m * p.q
    cc = -2.0 * m * p.e_eff

    def rhs(x, y):
        return (y[1], (ca / (x * x) + cb / x + cc) * y[0])

    # Outward: Frobenius seed scaled by x_min^-s to keep magnitudes near 1.
    c1 = -m * p.q / p.s
    y_out0 = (1.0 + c1 * x_min, p.s / x_min + (p.s + 1.0) * c1)
    t_eval_out = np.geomspace(x_min, x_star, opts.node_samples_out) if want_nodes else None
    sol_out = solve_ivp(
        rhs, (x_min, x_star), y_out0, method="DOP853",
        rtol=opts.ode_tol, atol=opts.ode_tol, t_eval=t_eval_out, dense_output=False,
    )
    if not sol_out.success:
        raise OdeIntegrationError(f"outward integration failed at E={energy}: {sol_out.message}")

    # Inward: leading decaying asymptotic, scaled to 1 at x_max.
    z_max = lam * x_max
    y_in0 = (1.0, lam * (p.gamma / z_max - 0.5))
    t_eval_in = np.linspace(x_max, x_star, opts.node_samples_in) if want_nodes else None
    sol_in = solve_ivp(
        rhs, (x_max, x_star), y_in0, method="DOP853",
        rtol=opts.ode_tol, atol=opts.ode_tol, t_eval=t_eval_in, dense_output=False,
    )
    if not sol_in.success:
        raise OdeIntegrationError(f"inward integration failed at E={energy}: {sol_in.message}")

    fo, do = sol_out.y[0][-1], sol_out.y[1][-1]
    fi, di = sol_in.y[0][-1], sol_in.y[1][-1]
    vo = np.array([fo, do / lam])
    vi = np.array([fi, di / lam])
    no, ni = np.hypot(*vo), np.hypot(*vi)
    if no == 0.0 or ni == 0.0:
        raise OdeIntegrationError(f"degenerate solution vector at E={energy}")
    vo /= no
    vi /= ni
    mismatch = float(vo[0] * vi[1] - vo[1] * vi[0])

    nodes = None
    if want_nodes:
        out_phi = sol_out.y[0]
        in_phi = sol_in.y[0][::-1]  # ascending x
        # Orient the inward branch to match the outward one at x_star.
        scale = fo / fi if abs(fi) > 1e-300 else math.copysign(1.0, fo * fi if fi else 1.0)
        assembled = np.concatenate([out_phi, (in_phi * scale)[1:]])
        signs = np.sign(assembled)
        signs = signs[signs != 0]
        nodes = int(np.count_nonzero(signs[1:] * signs[:-1] < 0))
    return mismatch, nodes


def _gamma_grid_energies(config: CouplingConfig, gamma_hi: float, step: float) -> np.ndarray:
    gammas = np.arange(step, gamma_hi + 0.5 * step, step)
    sgn = math.copysign(1.0, config.g1)
    return sgn * config.m * gammas / np.sqrt(gammas * gammas + config.g1 * config.g1)


def _find_brackets(config: CouplingConfig, energies, opts: OracleOptions):
    """Sign-change cells of the mismatch over an energy grid, in grid order.

    An exact zero becomes a degenerate (e, e) bracket so bisection is not
    launched on an interval without a sign change across it.
    """
    brackets = []
    prev_e = prev_w = None
    for e in energies:
        w, _ = _shoot(config, float(e), opts)
        if w == 0.0:
            brackets.append((float(e), float(e)))
        elif prev_w is not None and prev_w != 0.0 and prev_w * w < 0.0:
            brackets.append((prev_e, float(e)))
        prev_e, prev_w = float(e), w
    return brackets


def solve_level(config: CouplingConfig, n: int, opts: OracleOptions = DEFAULT_OPTIONS) -> OracleResult:
    """Numerically determine level n by node-indexed bracketing + bisection.

    Raises :class:`NoRootInBracketError` when the scan finds no eigenvalue
    at all (the g1 = 0 outcome), :class:`BracketExhaustedError` when fewer
    than n+1 roots exist in the scanned range or the converged solution has
    the wrong node count.  Levels beyond n ~ 8 press exponentially against
    the continuum edge where bracket sectors compress; loosen ``energy_tol``
    expectations there.
    """
    if n < 0:
        raise ValueError(f"quantum number must be nonnegative, got {n}")
    exponent_s(config)  # enforce the validity gate up front

    if config.g1 == 0.0:
        edge = 0.995 * config.m
        grid = np.linspace(-edge, edge, opts.null_scan_points)
        brackets = _find_brackets(config, grid, opts)
        if not brackets:
            raise NoRootInBracketError(
                f"no mismatch sign change over {opts.null_scan_points} energies in "
                f"(-{edge}, {edge}): no bound states for g1 = 0"
            )
    else:
        step = opts.scan_step
        brackets = []
        for _ in range(opts.max_bracket_refinements + 1):
            energies = _gamma_grid_energies(config, gamma_hi=n + 2.0, step=step)
            brackets = _find_brackets(config, energies, opts)
            if len(brackets) >= n + 1:
                break
            step /= 2.5
        if not brackets:
            raise NoRootInBracketError("no mismatch sign change found in the scanned range")

    if len(brackets) < n + 1:
        raise BracketExhaustedError(
            f"only {len(brackets)} eigenvalue bracket(s) found below the level-{n} window"
        )

    e_lo, e_hi = brackets[n]
    iterations = 0
    if e_lo != e_hi:
        w_lo, _ = _shoot(config, e_lo, opts)
        tol = opts.energy_tol * config.m
        while abs(e_hi - e_lo) > tol:
            e_mid = 0.5 * (e_lo + e_hi)
            w_mid, _ = _shoot(config, e_mid, opts)
            iterations += 1
            if w_mid == 0.0:
                e_lo = e_hi = e_mid
                break
            if (w_mid > 0.0) == (w_lo > 0.0):
                e_lo, w_lo = e_mid, w_mid
            else:
                e_hi = e_mid
    energy = 0.5 * (e_lo + e_hi)
    mismatch, nodes = _shoot(config, energy, opts, want_nodes=True)
    if nodes != n:
        raise BracketExhaustedError(
            f"level association failed: converged solution has {nodes} nodes, expected {n}"
        )
    return OracleResult(
        n=n,
        energy=energy,
        iterations=iterations,
        mismatch=mismatch,
        bracket=(e_lo, e_hi),
        node_count=nodes,
    )


def scan_mismatch(
    config: CouplingConfig,
    e_grid,
    opts: OracleOptions = DEFAULT_OPTIONS,
    want_nodes: bool = True,
) -> list[ScanPoint]:
    """Mismatch curve over an energy grid; sign changes locate eigenvalues.

    Per-point failures are recorded in the ``error`` field, not raised, so
    a scan across awkward energies still returns a full diagnostic table.
    ``want_nodes=False`` skips the node sampling (about twice as fast) when
    only the sign structure matters.
    """
    exponent_s(config)
    points: list[ScanPoint] = []
    for e in e_grid:
        e = float(e)
        try:
            mismatch, nodes = _shoot(config, e, opts, want_nodes=want_nodes)
            points.append(ScanPoint(energy=e, mismatch=mismatch, node_count=nodes))
        except Exception as exc:  # noqa: BLE001 - per-point diagnostics by contract
            points.append(ScanPoint(energy=e, mismatch=math.nan, node_count=None, error=str(exc)))
    return points


def count_sign_changes(points: list[ScanPoint]) -> int:
    """Sign changes of the mismatch across a scan, skipping failed points."""
    values = [p.mismatch for p in points if p.error is None and math.isfinite(p.mismatch)]
    flips = 0
    for a, b in zip(values[:-1], values[1:]):
        if a == 0.0 or a * b < 0.0:
            flips += 1
    return flips
