"""Full DKP spinor assembly and the conserved four-current, both ways.

The component reduction of the one-dimensional time-independent equation
leaves a single radial function Phi; the remaining spinor components follow
algebraically.  Spin 0 (five components, 1-based labels):

    phi_1 = Phi,
    phi_2 = (E - A0_min + i A0_non) Phi / m,
    phi_3 = (i/m) dPhi/dx,
    phi_4 = phi_5 = 0,

with A0_min = -g1/|x| and A0_non = -g2/|x|.  Spin 1 carries the same
structure per sigma = +/- channel, with phi_8 = 0 and the blocks

    psi_I^(+) = (psi_3, psi_4),  psi_I^(-) = psi_5,
    psi_II^(+) = (psi_6, psi_7), psi_II^(-) = psi_2,
    psi_III^(+) = (psi_10, -psi_9), psi_III^(-) = psi_1.

The current is computed two independent ways and must agree: from the
matrix definition J^mu = (psi^dagger eta0 beta^mu psi)/2 using the full
representation, and from the reduced closed forms

    J^0 = [(E - A0_min)/m] sum_sigma |phi_I^(sigma)|^2,
    J^1 = (1/m) Im sum_sigma phi_I^(sigma)* dphi_I^(sigma)/dx.

The nonminimal potential never enters the current.  At x = 0 every
component is reported as its one-sided limit, 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Spin, build_representation
from .errors import WeightNormalizationError
from .wavefunction import Eigenfunction, evaluate

#: Default sigma-channel weights for spin 1; the split between the two
#: channels is not fixed by the dynamics, so a symmetric default is declared.
DEFAULT_CHANNEL_WEIGHTS = (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))

_WEIGHT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class DKPSpinor:
    """Assembled spinor at one position: 5 or 10 complex components."""

    spin: Spin
    components: np.ndarray
    x: float
    energy: float


@dataclass(frozen=True)
class CurrentSample:
    j0: float
    j1: float


def _potentials(config, x: float) -> tuple[float, float]:
    ax = abs(x)
    return -config.g1 / ax, -config.g2 / ax


def assemble_spin0(ef: Eigenfunction, x: float) -> DKPSpinor:
    """Five-component spinor of the scalar sector at position x."""
    comps = np.zeros(5, dtype=complex)
    phi, dphi = evaluate(ef, x)
    if x != 0.0:
        a1, a2 = _potentials(ef.config, x)
        m = ef.config.m
        e = ef.state.energy
        comps[0] = phi
        comps[1] = (e - a1 + 1j * a2) * phi / m
        comps[2] = 1j * dphi / m
    return DKPSpinor(spin=Spin.ZERO, components=comps, x=x, energy=ef.state.energy)


def assemble_spin1(
    ef: Eigenfunction,
    channel_weights: tuple[complex, complex] = DEFAULT_CHANNEL_WEIGHTS,
    x: float = 0.0,
) -> DKPSpinor:
    """Ten-component spinor of the vector sector at position x.

    ``channel_weights`` (c_plus, c_minus) distribute Phi over the two sigma
    channels and must satisfy |c+|^2 + |c-|^2 = 1.  The sigma = + block is
    carried in its first slot (psi_3); its partner slot psi_4 stays empty,
    which leaves the channel currents unchanged.
    """
    c_plus, c_minus = channel_weights
    norm = abs(c_plus) ** 2 + abs(c_minus) ** 2
    if abs(norm - 1.0) > _WEIGHT_NORM_TOL:
        raise WeightNormalizationError(
            f"|c+|^2 + |c-|^2 = {norm}, expected 1 within {_WEIGHT_NORM_TOL}"
        )
    comps = np.zeros(10, dtype=complex)
    phi, dphi = evaluate(ef, x)
    if x != 0.0:
        a1, a2 = _potentials(ef.config, x)
        m = ef.config.m
        e = ef.state.energy
        w_plus = (e - a1 + 1j * a2) / m
        w_minus = (e - a1 - 1j * a2) / m
        comps[2] = c_plus * phi                  # psi_3 = phi_I^(+)
        comps[4] = c_minus * phi                 # psi_5 = phi_I^(-)
        comps[5] = w_plus * c_plus * phi         # psi_6 = phi_II^(+)
        comps[1] = w_minus * c_minus * phi       # psi_2 = phi_II^(-)
        comps[9] = 1j * c_plus * dphi / m        # psi_10 = phi_III^(+)
        comps[0] = 1j * c_minus * dphi / m       # psi_1 = phi_III^(-)
    return DKPSpinor(spin=Spin.ONE, components=comps, x=x, energy=ef.state.energy)


def current(spinor: DKPSpinor) -> CurrentSample:
    """J^0 and J^1 from the matrix definition (psi^dagger eta0 beta^mu psi)/2."""
    rep = build_representation(spinor.spin)
    bar = spinor.components.conj() @ rep.eta0
    j0 = 0.5 * (bar @ rep.beta[0] @ spinor.components)
    j1 = 0.5 * (bar @ rep.beta[1] @ spinor.components)
    return CurrentSample(j0=float(j0.real), j1=float(j1.real))


def current_closed_form(
    ef: Eigenfunction,
    channel_weights: tuple[complex, complex] = DEFAULT_CHANNEL_WEIGHTS,
    x: float = 0.0,
) -> CurrentSample:
    """J^0 and J^1 from the reduced one-dimensional expressions.

    Identical for both sectors once the channel weights are normalized:
    sum_sigma |phi_I^(sigma)|^2 collapses to |Phi|^2.
    """
    if x == 0.0:
        return CurrentSample(j0=0.0, j1=0.0)
    phi, dphi = evaluate(ef, x)
    cfg = ef.config
    e = ef.state.energy
    if cfg.spin is Spin.ONE:
        c_plus, c_minus = channel_weights
        weight_sq = abs(c_plus) ** 2 + abs(c_minus) ** 2
    else:
        weight_sq = 1.0
    a1, _ = _potentials(cfg, x)
    j0 = (e - a1) / cfg.m * weight_sq * phi * phi
    j1 = weight_sq / cfg.m * (phi.conjugate() * dphi).imag if isinstance(phi, complex) else 0.0
    return CurrentSample(j0=float(j0), j1=float(j1))


def charge_conjugate(spinor: DKPSpinor) -> DKPSpinor:
    """Apply C together with complex conjugation.

    Maps a solution of the (g1, E) problem onto one of the (-g1, -E)
    problem and flips the sign of the current.
    """
    rep = build_representation(spinor.spin)
    comps = rep.conjugator.astype(complex) @ spinor.components.conj()
    return DKPSpinor(spin=spinor.spin, components=comps, x=spinor.x, energy=-spinor.energy)
