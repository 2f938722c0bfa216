"""Normalized odd-parity eigenfunctions on the whole line.

On the positive half-line the eigenfunction of level n is

    Phi(x) = N z^s e^(-z/2) L_n^(2s-1)(z),    z = lam * x,

extended to the whole line as an odd function (the even extension fails the
connection condition across the singular origin; see
:func:`connection_condition_residual`).  The normalization weight is the
charge density (E - A0_min)/m = (E + g1/|x|)/m, targeted to +1 for the
particle branch (E > 0) and -1 for the antiparticle branch, and the sign
convention N > 0 keeps the first lobe positive.

At exactly x = 0 the derivative is reported as 0 by convention: the
one-sided limit of Phi' diverges like x^(s-1), and grid exports need a
finite placeholder.  Phi(0) = 0 is exact (homogeneous Dirichlet).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .spectrum import BoundState, CouplingConfig, effective_params, energy_level
from .special import (
    DEFAULT_RULE,
    QuadratureRule,
    integrate,
    laguerre,
    laguerre_deriv,
    laguerre_second_deriv,
)

#: Default symmetric export grid: 2001 points on [-x_max, x_max], x_max = 40/lam.
DEFAULT_SAMPLES = 2001
DEFAULT_XMAX_Z = 40.0

#: Envelope cutoff for semi-infinite integrals: truncate where
#: z^(2s+2n) e^(-z) has fallen below this fraction of its peak.
_TAIL_FRACTION = 1e-18

#: Quadrature rule for the connection-condition integrals.  The x^(s-2)
#: integrand reaches ~1e4 near small cutoffs, so certifying much below 1e-9
#: absolute hits the double-precision floor; the residual signal is O(1)
#: for the even extension and cancels exactly for the odd one, so 1e-9
#: absolute is plenty.
CONNECTION_RULE = QuadratureRule(abs_tol=1e-9, rel_tol=1e-8, limit=60)


class Parity(Enum):
    ODD = "odd"
    EVEN = "even"


class PhiValue(NamedTuple):
    phi: float
    dphi: float


@dataclass(frozen=True)
class WavefunctionSample:
    """One grid point of the whole-line solution with its current densities."""

    x: float
    phi: float
    dphi: float
    j0: float
    j1: float


@dataclass
class Eigenfunction:
    """A bound state together with its whole-line normalization.

    ``norm_const`` starts at 1 and is set by :func:`normalize`; parity is
    odd for every admissible state.  ``norm_diagnostics`` records the tail
    truncation point and the quadrature error estimate of the last
    normalization run.
    """

    state: BoundState
    config: CouplingConfig
    norm_const: float = 1.0
    parity: Parity = Parity.ODD
    norm_diagnostics: dict = field(default_factory=dict, repr=False, compare=False)


def eigenfunction(config: CouplingConfig, n: int, rule: QuadratureRule = DEFAULT_RULE) -> Eigenfunction:
    """Convenience constructor: solve level n and normalize it."""
    ef = Eigenfunction(state=energy_level(config, n), config=config)
    normalize(ef, rule)
    return ef


def _half_line(state: BoundState, norm_const: float, ax):
    """phi and dphi/dx on the positive half-line at |x| values ``ax``."""
    ax = np.asarray(ax, dtype=float)
    z = state.lam * ax
    a = 2.0 * state.s - 1.0
    lag = laguerre(state.n, a, z)
    dlag = laguerre_deriv(state.n, a, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        zs = np.power(z, state.s)
        zsm1 = np.power(z, state.s - 1.0)
        env = np.exp(-0.5 * z)
        phi = norm_const * zs * env * lag
        dphi = norm_const * state.lam * env * (
            state.s * zsm1 * lag - 0.5 * zs * lag + zs * dlag
        )
    return phi, dphi


def evaluate_arrays(ef: Eigenfunction, xs):
    """Vectorized odd-extension (phi, dphi) over an array of positions."""
    xs = np.asarray(xs, dtype=float)
    ax = np.abs(xs)
    phi_h, dphi_h = _half_line(ef.state, ef.norm_const, ax)
    sign = np.sign(xs)
    phi = np.where(xs == 0.0, 0.0, sign * phi_h)
    dphi = np.where(xs == 0.0, 0.0, dphi_h)  # derivative of an odd function is even
    return phi, dphi


def evaluate(ef: Eigenfunction, x: float) -> PhiValue:
    """phi and dphi/dx at one point of the whole line."""
    phi, dphi = evaluate_arrays(ef, np.asarray([x], dtype=float))
    return PhiValue(float(phi[0]), float(dphi[0]))


def second_derivative_arrays(ef: Eigenfunction, xs):
    """Analytic d^2 phi / dx^2 on the odd extension (odd in x).

    Product rule on z^s e^(-z/2) L_n with the Laguerre derivative
    identities; used by the pointwise ODE-residual check.
    """
    xs = np.asarray(xs, dtype=float)
    ax = np.abs(xs)
    st = ef.state
    z = st.lam * ax
    a = 2.0 * st.s - 1.0
    lag = laguerre(st.n, a, z)
    dlag = laguerre_deriv(st.n, a, z)
    d2lag = laguerre_second_deriv(st.n, a, z)
    s = st.s
    with np.errstate(divide="ignore", invalid="ignore"):
        env = np.exp(-0.5 * z)
        u2 = env * (
            s * (s - 1.0) * np.power(z, s - 2.0) * lag
            + 0.25 * np.power(z, s) * lag
            + np.power(z, s) * d2lag
            - s * np.power(z, s - 1.0) * lag
            + 2.0 * s * np.power(z, s - 1.0) * dlag
            - np.power(z, s) * dlag
        )
        d2 = ef.norm_const * st.lam * st.lam * u2
    return np.where(xs == 0.0, 0.0, np.sign(xs) * d2)


def truncation_point(state: BoundState) -> float:
    """z beyond which the envelope z^(2s+2n) e^(-z) is below 1e-18 of its peak."""
    p = 2.0 * state.s + 2.0 * state.n
    z_peak = max(p, 1.0)
    log_cut = math.log(_TAIL_FRACTION)

    def log_ratio(zv: float) -> float:
        return p * math.log(zv / z_peak) - (zv - z_peak)

    z = z_peak + 60.0
    while log_ratio(z) > log_cut:
        z += 10.0
    return z


def normalize(ef: Eigenfunction, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """Fix N so the weighted norm integral equals sign(E).

    The whole-line integral of [(E + g1/|x|)/m] |Phi|^2 is computed as twice
    the half-line integral (the integrand is even); the |x|^-1 piece is
    integrable because 2s - 1 > 0.  Sets ``ef.norm_const`` and returns it.
    """
    st, cfg = ef.state, ef.config
    z_cut = truncation_point(st)
    x_cut = z_cut / st.lam
    m, g1, energy = cfg.m, cfg.g1, st.energy

    def weighted_density(x: float) -> float:
        if x == 0.0:
            return 0.0  # limit: phi^2 / x ~ x^(2s-1) -> 0
        phi, _ = _half_line(st, 1.0, x)
        return (energy + g1 / x) / m * float(phi) * float(phi)

    res = integrate(weighted_density, 0.0, x_cut, rule)
    total = 2.0 * res.value
    norm_const = 1.0 / math.sqrt(abs(total))
    ef.norm_const = norm_const
    ef.norm_diagnostics = {
        "z_cut": z_cut,
        "quad_est_error": res.est_error,
        "target": math.copysign(1.0, energy),
    }
    return norm_const


def weighted_overlap(
    ef_a: Eigenfunction, ef_b: Eigenfunction, rule: QuadratureRule = DEFAULT_RULE
) -> float:
    """Whole-line overlap with the averaged-energy weight.

    integral dx [((E_a + E_b)/2 + g1/|x|)/m] Phi_a Phi_b; this is the inner
    product under which distinct levels are orthogonal -- not the naive L2
    product.  Diagonal entries reproduce the signed norm.
    """
    if ef_a.config != ef_b.config:
        raise ValueError("overlap requires a shared coupling configuration")
    cfg = ef_a.config
    sa, sb = ef_a.state, ef_b.state
    e_bar = 0.5 * (sa.energy + sb.energy)
    x_cut = max(truncation_point(sa) / sa.lam, truncation_point(sb) / sb.lam)

    def integrand(x: float) -> float:
        if x == 0.0:
            return 0.0
        pa, _ = _half_line(sa, ef_a.norm_const, x)
        pb, _ = _half_line(sb, ef_b.norm_const, x)
        return (e_bar + cfg.g1 / x) / cfg.m * float(pa) * float(pb)

    return 2.0 * integrate(integrand, 0.0, x_cut, rule).value


def orthogonality_matrix(states: list[Eigenfunction], rule: QuadratureRule = DEFAULT_RULE):
    """Gram matrix of the weighted overlaps; +-1 diagonal, 0 off-diagonal."""
    k = len(states)
    gram = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            gram[i, j] = gram[j, i] = weighted_overlap(states[i], states[j], rule)
    return gram


def wronskian_limit_check(
    ef_a: Eigenfunction, ef_b: Eigenfunction, x_probes
) -> list[float]:
    """W(x) = Phi_a Phi_b' - Phi_a' Phi_b at each probe.

    For two admissible states of one configuration W decays to zero toward
    the origin -- the boundary behaviour that makes distinct levels
    orthogonal.  The leading x^(2s-1) pieces of the two products cancel
    exactly, so the decay power is 2s.
    """
    if ef_a.config != ef_b.config:
        raise ValueError("Wronskian check requires a shared coupling configuration")
    out = []
    for x in x_probes:
        pa, da = evaluate(ef_a, x)
        pb, db = evaluate(ef_b, x)
        out.append(pa * db - da * pb)
    return out


def _extension(ef: Eigenfunction, parity: Parity):
    """(phi, dphi) callables for the chosen parity extension of the half-line solution."""
    if parity is Parity.ODD:
        def phi(x: float) -> float:
            return evaluate(ef, x).phi

        def dphi(x: float) -> float:
            return evaluate(ef, x).dphi
    else:
        def phi(x: float) -> float:
            return evaluate(ef, abs(x)).phi

        def dphi(x: float) -> float:
            return math.copysign(1.0, x) * evaluate(ef, abs(x)).dphi

    return phi, dphi


def connection_condition_residual(
    ef: Eigenfunction,
    parity: Parity,
    delta: float,
    epsilon: float,
    rule: QuadratureRule = CONNECTION_RULE,
) -> float:
    """Residual of the derivative jump relation across the singular origin.

    Integrating the effective equation over (-delta, delta) relates the
    derivative jump to 2m * integral of V_eff Phi.  The non-integrable
    x^(s-2) singularity of the even extension forces an epsilon cutoff;
    the returned residual is

        R = [Phi'(+delta) - Phi'(-delta)]
            - 2m * integral over (-delta,-eps) u (eps,delta) of V_eff Phi dx.

    Odd extension: both terms vanish by symmetry, R = 0 up to quadrature
    noise.  Even extension: R ~ 2 Phi'(eps), diverging like eps^(s-1) as
    eps -> 0, which is the inconsistency that rules even solutions out.
    The E_eff term is omitted: it is parity-odd for the odd case and only
    O(delta^(s+1)) for the even one.
    """
    if not 0.0 < epsilon < delta:
        raise ValueError(f"require 0 < epsilon < delta, got eps={epsilon}, delta={delta}")
    phi_ext, dphi_ext = _extension(ef, parity)
    p = effective_params(ef.config, ef.state.energy)

    def v_phi(x: float) -> float:
        return (-p.q / abs(x) + p.alpha / (x * x)) * phi_ext(x)

    jump = dphi_ext(delta) - dphi_ext(-delta)
    left = integrate(v_phi, -delta, -epsilon, rule).value
    right = integrate(v_phi, epsilon, delta, rule).value
    return jump - 2.0 * ef.config.m * (left + right)


def connection_scan(
    ef: Eigenfunction,
    delta: float,
    eps_values,
    rule: QuadratureRule = CONNECTION_RULE,
) -> dict:
    """Odd/even residuals over a list of cutoffs, plus the even-case slope fit.

    The fitted log-log slope of |R_even| against eps should sit at s - 1.
    """
    eps_values = list(eps_values)
    r_odd = [connection_condition_residual(ef, Parity.ODD, delta, e, rule) for e in eps_values]
    r_even = [connection_condition_residual(ef, Parity.EVEN, delta, e, rule) for e in eps_values]
    slope = float(
        np.polyfit(np.log(np.asarray(eps_values)), np.log(np.abs(np.asarray(r_even))), 1)[0]
    )
    return {
        "delta": delta,
        "eps": eps_values,
        "r_odd": r_odd,
        "r_even": r_even,
        "slope_even": slope,
        "slope_expected": ef.state.s - 1.0,
    }


def node_count(ef: Eigenfunction, samples: int = 4001) -> int:
    """Number of interior zeros of the half-line solution on (0, inf).

    Counts strict sign changes on a dense grid covering every Laguerre
    zero (all lie well inside z < 4n + 2s + 2).
    """
    st = ef.state
    z_hi = 4.0 * st.n + 2.0 * st.s + 10.0
    xs = np.linspace(1e-9, z_hi / st.lam, samples)
    phi, _ = _half_line(st, 1.0, xs)
    signs = np.sign(phi)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] * signs[:-1] < 0))


def ode_residual(ef: Eigenfunction, xs):
    """Pointwise residual -Phi''/(2m) + (V_eff - E_eff) Phi on x > 0."""
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0):
        raise ValueError("ODE residual is evaluated on the positive half-line")
    p = effective_params(ef.config, ef.state.energy)
    phi, _ = evaluate_arrays(ef, xs)
    d2 = second_derivative_arrays(ef, xs)
    v = -p.q / xs + p.alpha / (xs * xs)
    return -d2 / (2.0 * ef.config.m) + (v - p.e_eff) * phi


def smallx_exponent(ef: Eigenfunction, x_lo: float = 1e-6, x_hi: float = 1e-4, points: int = 21) -> float:
    """Fitted slope of log phi against log x near the origin (should be s)."""
    xs = np.geomspace(x_lo, x_hi, points)
    phi, _ = evaluate_arrays(ef, xs)
    return float(np.polyfit(np.log(xs), np.log(np.abs(phi)), 1)[0])


def default_grid(ef: Eigenfunction, samples: int = DEFAULT_SAMPLES, x_max: float | None = None):
    """Symmetric export grid; x_max defaults to 40/lam (tail well past visible)."""
    if x_max is None:
        x_max = DEFAULT_XMAX_Z / ef.state.lam
    return np.linspace(-x_max, x_max, samples)


def sample(ef: Eigenfunction, xs) -> list[WavefunctionSample]:
    """Grid serialization of phi, dphi, and the closed-form current densities.

    j1 vanishes identically for these real stationary states; j0 carries
    the charge-density weight and is reported as its limit 0 at x = 0.
    """
    xs = np.asarray(xs, dtype=float)
    phi, dphi = evaluate_arrays(ef, xs)
    cfg, e = ef.config, ef.state.energy
    with np.errstate(divide="ignore", invalid="ignore"):
        weight = (e + cfg.g1 / np.abs(xs)) / cfg.m
        j0 = np.where(xs == 0.0, 0.0, weight * phi * phi)
    j1 = np.zeros_like(xs)
    return [
        WavefunctionSample(x=float(x), phi=float(p), dphi=float(d), j0=float(a), j1=float(b))
        for x, p, d, a, b in zip(xs, phi, dphi, j0, j1)
    ]
