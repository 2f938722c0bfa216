"""Associated Laguerre polynomials, Kummer's function, and quadrature.

Small, self-contained numerics used by every downstream module.  The
Laguerre evaluator runs the stable three-term forward recurrence (the
bound-state range here is n of order ten, weight exponent in (0, 1), z up
to a few tens, where forward recursion is well conditioned).  Kummer's
M(a, b, z) truncates exactly when a is a nonpositive integer and otherwise
sums the power series with a term-ratio stop rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import KummerConvergenceError, QuadratureToleranceError

#: Kummer series stop rule and cap: two consecutive terms each below
#: 1e-17 of the running sum, at most 500 terms.
_KUMMER_TERM_EPS = 1e-17
_KUMMER_MAX_TERMS = 500

#: Nudge factor for non-finite endpoint samples of integrable singularities.
_ENDPOINT_NUDGE = 2.0 ** -50


class QuadKind(Enum):
    ADAPTIVE_SIMPSON = "adaptive_simpson"
    GAUSS_LEGENDRE_COMPOSITE = "gauss_legendre_composite"


@dataclass(frozen=True)
class QuadratureRule:
    """Quadrature configuration.

    ``limit`` is the recursion depth cap for the adaptive rule and the panel
    count for the composite rule.
    """

    kind: QuadKind = QuadKind.ADAPTIVE_SIMPSON
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    limit: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.limit < 1:
            raise ValueError("limit must be a positive integer")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float


DEFAULT_RULE = QuadratureRule()


def laguerre(n: int, a: float, z):
    """Associated Laguerre polynomial L_n^(a)(z) by forward recurrence.

    Broadcasts over ``z`` (scalar or ndarray).  Requires n >= 0 and a > -1.
    """
    if n < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n}")
    if a <= -1.0:
        raise ValueError(f"Laguerre parameter must exceed -1, got {a}")
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - z) * cur - (k + a) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def laguerre_deriv(n: int, a: float, z):
    """d/dz L_n^(a)(z) = -L_{n-1}^(a+1)(z); zero for n = 0."""
    if n == 0:
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        return out if out.ndim else 0.0
    out = laguerre(n - 1, a + 1.0, z)
    return -out


def laguerre_second_deriv(n: int, a: float, z):
    """d^2/dz^2 L_n^(a)(z) = L_{n-2}^(a+2)(z); zero for n < 2."""
    if n < 2:
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        return out if out.ndim else 0.0
    return laguerre(n - 2, a + 2.0, z)


def kummer_m(a: float, b: float, z: float) -> float:
    """Confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).

    When a is a nonpositive integer the series truncates to a degree-n
    polynomial; that polynomial is evaluated through the Laguerre
    recurrence (M(-n, b, z) = L_n^(b-1)(z) / C(n+b-1, n)), because naive
    ascending summation of the alternating truncated series loses up to
    ten digits by z ~ 50.  Other arguments use the power series with a
    two-consecutive-small-terms stop rule.
    """
    if b <= 0 and b == math.floor(b):
        raise ValueError(f"Kummer parameter b must not be a nonpositive integer, got {b}")
    if a <= 0 and a == math.floor(a):
        n = int(-a)
        if b > 0.0:
            binom = 1.0
            for k in range(1, n + 1):  # C(n + b - 1, n) by product
                binom *= (b - 1.0 + k) / k
            return float(laguerre(n, b - 1.0, z)) / binom
        total, term = 1.0, 1.0  # b - 1 <= -1: recurrence unavailable, sum directly
        for k in range(n):
            term *= (a + k) * z / ((b + k) * (k + 1))
            total += term
        return total
    total, term = 1.0, 1.0
    small_streak = 0
    for k in range(_KUMMER_MAX_TERMS):
        term *= (a + k) * z / ((b + k) * (k + 1))
        total += term
        if abs(term) < _KUMMER_TERM_EPS * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    raise KummerConvergenceError(
        f"M({a}, {b}, {z}) did not converge within {_KUMMER_MAX_TERMS} terms",
        terms=_KUMMER_MAX_TERMS,
    )


def _try_eval(f, x: float) -> float:
    try:
        return f(x)
    except (ZeroDivisionError, OverflowError, ValueError):
        return math.inf


def _sample(f, x: float, lo: float, hi: float) -> float:
    """Evaluate f, nudging off a non-finite (or raising) endpoint sample.

    Lets the adaptive rule cope with integrable endpoint singularities such
    as x**(-1/4) at x = 0; the nudge is 2**-50 of the interval, so the
    skipped sliver contributes far below the default tolerances.
    """
    v = _try_eval(f, x)
    if math.isfinite(v):
        return v
    if x == lo:
        v = _try_eval(f, lo + (hi - lo) * _ENDPOINT_NUDGE)
    elif x == hi:
        v = _try_eval(f, hi - (hi - lo) * _ENDPOINT_NUDGE)
    return v if math.isfinite(v) else 0.0


def _adaptive_simpson(f, lo: float, hi: float, rule: QuadratureRule) -> QuadratureResult:
    flo = _sample(f, lo, lo, hi)
    fhi = _sample(f, hi, lo, hi)
    mid = 0.5 * (lo + hi)
    fmid = _sample(f, mid, lo, hi)
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    # Budget the recursion on the absolute tolerance alone: the first
    # whole-interval estimate of a near-singular integrand can be wildly
    # inflated, and a budget derived from it would not certify the final
    # max(abs_tol, rel_tol * |value|) gate.
    tol0 = rule.abs_tol

    def recurse(a, b, fa, fm, fb, approx, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = _sample(f, lm, lo, hi)
        frm = _sample(f, rm, lo, hi)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - approx
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0, abs(delta) / 15.0
        lval, lerr = recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        rval, rerr = recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        return lval + rval, lerr + rerr

    value, est = recurse(lo, hi, flo, fmid, fhi, whole, tol0, rule.limit)
    return QuadratureResult(value=value, est_error=est)


@lru_cache(maxsize=8)
def _leggauss(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def _gauss_composite(f, lo: float, hi: float, panels: int, order: int = 12) -> float:
    nodes, weights = _leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        center = 0.5 * (a + b)
        xs = center + half * nodes
        total += half * sum(w * _sample(f, x, lo, hi) for x, w in zip(xs, weights))
    return total


def integrate(f, lo: float, hi: float, rule: QuadratureRule = DEFAULT_RULE) -> QuadratureResult:
    """Integrate f over the finite interval [lo, hi] under ``rule``.

    Raises :class:`QuadratureToleranceError` (carrying the best estimate and
    its error bound) when the requested tolerance cannot be certified.
    Semi-infinite integrals are the caller's job: map or truncate first.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration limits must be finite")
    if not lo < hi:
        raise ValueError(f"require lo < hi, got [{lo}, {hi}]")
    if rule.kind is QuadKind.ADAPTIVE_SIMPSON:
        result = _adaptive_simpson(f, lo, hi, rule)
    else:
        coarse = _gauss_composite(f, lo, hi, rule.limit)
        fine = _gauss_composite(f, lo, hi, 2 * rule.limit)
        result = QuadratureResult(value=fine, est_error=abs(fine - coarse))
    if result.est_error > max(rule.abs_tol, rule.rel_tol * abs(result.value)):
        raise QuadratureToleranceError(
            f"quadrature error estimate {result.est_error:.3e} exceeds tolerance",
            value=result.value,
            est_error=result.est_error,
        )
    return result
