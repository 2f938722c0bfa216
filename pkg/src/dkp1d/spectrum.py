"""Closed-form bound-state spectrum of the effective Kratzer-type problem.

The one-dimensional DKP equation with inversely linear time components
A0_min = -g1/|x| (minimal) and A0_non = -g2/|x| (nonminimal) reduces, for
both spin sectors, to a Schroedinger-like equation

    -Phi''/(2m) + V_eff Phi = E_eff Phi,
    V_eff = -q/|x| + alpha/x^2,   E_eff = (E^2 - m^2)/(2m),
    q = (E/m) g1,                 alpha = -(g1^2 + g2^2)/(2m).

The attractive inverse-square piece admits a self-adjoint bound-state
problem only above the collapse threshold alpha > -1/(8m), i.e. for
0 < g1^2 + g2^2 < 1/4, where the small-x exponent s lies in (1/2, 1).
Polynomial termination of the regular Kummer solution then quantizes

    E_n = sign(g1) * m * {1 + [g1/(n + 1/2 + sqrt(1/4 - g1^2 - g2^2))]^2}^(-1/2).

All quantities are in natural units (hbar = c = 1); energies scale exactly
linearly with m.  The energy formula is evaluated in the fixed order inner
ratio -> square -> 1 + -> inverse square root so that flipping the sign of
g1 flips the sign of E bit-exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import Spin
from .errors import CriticalCouplingError, FreeCaseError, NoBoundStatesError

#: Largest quantum number emitted by :func:`spectrum` unless overridden;
#: levels accumulate at |E| = m and lose resolution beyond this.
DEFAULT_LEVEL_CAP = 64

#: Relative tolerance of the internal quantization self-check
#: gamma(E) = n + s performed on every constructed state.
_SELF_CONSISTENCY_RTOL = 1e-12


@dataclass(frozen=True)
class CouplingConfig:
    """Physical inputs: mass, the two coupling strengths, and the sector.

    Constructible for any couplings; the bound-state validity gate
    0 < g1^2 + g2^2 < 1/4 is reported by :meth:`validity` and enforced by
    the operations that need it.
    """

    m: float
    g1: float
    g2: float
    spin: Spin = Spin.ZERO

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")

    @property
    def coupling_sq(self) -> float:
        return self.g1 * self.g1 + self.g2 * self.g2

    def validity(self) -> tuple[bool, str]:
        """Bound-state gate with a reason string for reports."""
        ss = self.coupling_sq
        if ss == 0.0:
            return False, "free case: g1 = g2 = 0"
        if ss >= 0.25:
            return False, f"critical coupling: g1^2 + g2^2 = {ss} >= 1/4"
        return True, "ok"


@dataclass(frozen=True)
class EffectiveParams:
    """Derived quantities of the effective problem at a given energy.

    Valid for any |E| < m (not only eigenvalues), which is what the
    shooting oracle needs: the Coulomb strength q depends on E.
    """

    q: float
    alpha: float
    e_eff: float
    s: float
    gamma: float
    lam: float
    kummer_a: float
    kummer_b: float


@dataclass(frozen=True)
class BoundState:
    """Analytic solution record for one level.

    ``lam`` is the inverse length scale of the dimensionless coordinate
    z = lam * |x| (lam = 2 sqrt(m^2 - E^2)); ``sign`` = sign(g1) = sign(E).
    """

    n: int
    energy: float
    s: float
    lam: float
    sign: int

    @property
    def gamma(self) -> float:
        return self.n + self.s


def exponent_s(config: CouplingConfig) -> float:
    """Small-x exponent s = 1/2 + sqrt(1/4 - (g1^2 + g2^2)), in (1/2, 1).

    The minus root is never returned: orthogonality of distinct states
    across the singular origin requires Re(s) > 1/2.  Raises
    :class:`FreeCaseError` when both couplings vanish and
    :class:`CriticalCouplingError` at or beyond g1^2 + g2^2 = 1/4 (the
    collapse-to-the-center regime; s would reach 1/2 or turn complex).
    """
    ss = config.coupling_sq
    if ss == 0.0:
        raise FreeCaseError("g1 = g2 = 0: no potential, no bound-state problem")
    if ss >= 0.25:
        raise CriticalCouplingError(
            f"g1^2 + g2^2 = {ss} >= 1/4: inverse-square term at or beyond collapse strength"
        )
    return 0.5 + math.sqrt(0.25 - ss)


def effective_params(config: CouplingConfig, energy: float) -> EffectiveParams:
    """Effective-problem quantities for a trial or eigen energy |E| < m."""
    m = config.m
    if not abs(energy) < m:
        raise ValueError(f"require |E| < m, got E = {energy}, m = {m}")
    s = exponent_s(config)
    q = (energy / m) * config.g1
    alpha = -config.coupling_sq / (2.0 * m)
    e_eff = -(m - energy) * (m + energy) / (2.0 * m)
    lam = 2.0 * math.sqrt(-2.0 * m * e_eff)
    gamma = q * math.sqrt(-m / (2.0 * e_eff))
    return EffectiveParams(
        q=q,
        alpha=alpha,
        e_eff=e_eff,
        s=s,
        gamma=gamma,
        lam=lam,
        kummer_a=s - gamma,
        kummer_b=2.0 * s,
    )


def energy_level(config: CouplingConfig, n: int) -> BoundState:
    """Closed-form level n of the discrete spectrum.

    Raises :class:`NoBoundStatesError` for g1 = 0 (a pure inverse-square
    attraction holds no bound states) in addition to the gate errors of
    :func:`exponent_s`.
    """
    if n < 0:
        raise ValueError(f"quantum number must be nonnegative, got {n}")
    s = exponent_s(config)  # also enforces the validity gate
    if config.g1 == 0.0:
        raise NoBoundStatesError("g1 = 0: pure nonminimal coupling holds no bound states")
    m = config.m
    ratio = config.g1 / (n + s)
    root = math.sqrt(1.0 + ratio * ratio)
    energy = math.copysign(m / root, config.g1)
    # lam = 2 sqrt(m^2 - E^2) without the m - |E| cancellation that bites
    # near the continuum edge: m^2 - E^2 = m^2 ratio^2 / (1 + ratio^2).
    lam = 2.0 * m * abs(ratio) / root
    state = BoundState(n=n, energy=energy, s=s, lam=lam, sign=1 if config.g1 > 0 else -1)

    # Internal guard: gamma(E) = 2 E g1 / lam (the stable equivalent of
    # E g1 / sqrt(m^2 - E^2)) must reproduce n + s.
    gamma = 2.0 * energy * config.g1 / lam
    gap = abs(gamma - (n + s)) / (n + s)
    if gap > _SELF_CONSISTENCY_RTOL:
        raise ArithmeticError(
            f"quantization self-check failed for n={n}: |gamma(E) - (n+s)| rel = {gap:.3e}"
        )
    return state


def self_consistency_gap(config: CouplingConfig, state: BoundState) -> float:
    """Relative gap |gamma(E) - (n + s)| / (n + s) of the quantization rule."""
    m, e = config.m, state.energy
    gamma = e * config.g1 / math.sqrt((m - e) * (m + e))
    target = state.n + state.s
    return abs(gamma - target) / target


def spectrum(config: CouplingConfig, n_max: int, level_cap: int = DEFAULT_LEVEL_CAP) -> list[BoundState]:
    """Levels n = 0..n_max, strictly monotone toward the continuum edge.

    ``level_cap`` is a soft guard against emitting numerically degenerate
    levels piled up at |E| = m; raise it explicitly when more are wanted.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if n_max > level_cap:
        raise ValueError(
            f"n_max = {n_max} exceeds the level cap {level_cap}; pass level_cap=... to override"
        )
    return [energy_level(config, n) for n in range(n_max + 1)]


def nonrelativistic_energy(config: CouplingConfig, n: int) -> float:
    """Weak-coupling reference value E = m - m g1^2 / (2 (n+1)^2).

    Only the minimal coupling survives in this limit; it reproduces the
    nonrelativistic one-dimensional Coulomb levels.
    """
    if not config.g1 > 0:
        raise ValueError("nonrelativistic reference defined for g1 > 0")
    if n < 0:
        raise ValueError(f"quantum number must be nonnegative, got {n}")
    return config.m - config.m * config.g1 * config.g1 / (2.0 * (n + 1) ** 2)
