"""Special functions and quadrature against independent references.

The in-package implementations (forward recurrence, truncated/powersummed
Kummer series, adaptive Simpson, composite Gauss-Legendre) are checked
against scipy.special and closed forms throughout.
"""

import math

import numpy as np
import pytest
from scipy.special import binom, eval_genlaguerre, gamma, hyp1f1

from dkp1d.errors import KummerConvergenceError, QuadratureToleranceError
from dkp1d.special import (
    QuadKind,
    QuadratureRule,
    integrate,
    kummer_m,
    laguerre,
    laguerre_deriv,
)

RNG = np.random.default_rng(9271)


def _laguerre_series(n: int, a: float, z: float) -> float:
    # explicit finite series, the independent oracle for small n
    return sum((-1) ** k * binom(n + a, n - k) * z**k / math.factorial(k) for k in range(n + 1))


class TestLaguerre:
    def test_degree_zero_is_one(self):
        for a, z in [(0.0, 0.0), (0.5, 3.7), (-0.2, 41.0)]:
            assert laguerre(0, a, z) == 1.0

    def test_degree_one_closed_form(self):
        assert laguerre(1, 0.5, 2.0) == pytest.approx(-0.5, rel=1e-15)

    def test_degree_two_series_value(self):
        # explicit series gives exactly -1/2 at (n, a, z) = (2, 0, 1)
        assert _laguerre_series(2, 0.0, 1.0) == pytest.approx(-0.5, rel=1e-14)
        assert laguerre(2, 0.0, 1.0) == pytest.approx(-0.5, rel=1e-14)

    def test_against_scipy_random_grid(self):
        for _ in range(200):
            n = int(RNG.integers(0, 21))
            a = float(RNG.uniform(0.01, 0.99))
            z = float(RNG.uniform(0.0, 50.0))
            ref = eval_genlaguerre(n, a, z)
            assert laguerre(n, a, z) == pytest.approx(ref, rel=1e-11, abs=1e-13)

    def test_recurrence_consistency(self):
        for _ in range(200):
            n = int(RNG.integers(1, 20))
            a = float(RNG.uniform(0.01, 0.99))
            z = float(RNG.uniform(0.0, 50.0))
            lhs = (n + 1) * laguerre(n + 1, a, z)
            rhs = (2 * n + 1 + a - z) * laguerre(n, a, z) - (n + a) * laguerre(n - 1, a, z)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_broadcasts_over_z(self):
        zs = np.linspace(0.0, 10.0, 7)
        vals = laguerre(3, 0.8, zs)
        assert vals.shape == zs.shape
        for z, v in zip(zs, vals):
            assert v == pytest.approx(laguerre(3, 0.8, float(z)), rel=1e-15)

    def test_derivative_identity(self):
        # d/dz L_n^(a) = -L_{n-1}^(a+1); finite differences as the oracle
        h = 1e-6
        for n, a, z in [(1, 0.8, 2.0), (4, 0.3, 7.5)]:
            fd = (laguerre(n, a, z + h) - laguerre(n, a, z - h)) / (2 * h)
            assert laguerre_deriv(n, a, z) == pytest.approx(fd, rel=1e-8)
        assert laguerre_deriv(0, 0.5, 2.0) == 0.0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            laguerre(2, -1.0, 1.0)
        with pytest.raises(ValueError):
            laguerre(-1, 0.5, 1.0)


class TestKummer:
    def test_at_origin(self):
        assert kummer_m(0.7, 1.5, 0.0) == 1.0

    def test_polynomial_truncation(self):
        assert kummer_m(-1.0, 2.0, 3.0) == pytest.approx(-0.5, rel=1e-15)

    def test_exponential_case(self):
        # M(1, 1, z) = e^z; compare against the independent exponential
        assert kummer_m(1.0, 1.0, 1.0) == pytest.approx(math.e, rel=1e-14)

    def test_laguerre_bridge(self):
        # M(-n, a+1, z) = L_n^(a)(z) / C(n+a, n)
        for _ in range(100):
            n = int(RNG.integers(0, 15))
            a = float(RNG.uniform(0.01, 0.99))
            z = float(RNG.uniform(0.0, 50.0))
            lhs = kummer_m(-float(n), a + 1.0, z)
            rhs = laguerre(n, a, z) / binom(n + a, n)
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_against_scipy_random_grid(self):
        for _ in range(100):
            a = float(RNG.uniform(-4.9, 4.9))
            if a <= 0 and a == math.floor(a):
                a += 0.5
            b = float(RNG.uniform(0.5, 5.0))
            z = float(RNG.uniform(0.0, 30.0))
            assert kummer_m(a, b, z) == pytest.approx(hyp1f1(a, b, z), rel=1e-10)

    def test_bad_b_raises(self):
        for b in (0.0, -1.0, -7.0):
            with pytest.raises(ValueError):
                kummer_m(0.5, b, 1.0)

    def test_convergence_failure_reports_terms(self):
        with pytest.raises(KummerConvergenceError) as info:
            kummer_m(0.5, 1.5, 5000.0)
        assert info.value.terms == 500


class TestQuadrature:
    def test_constant(self):
        res = integrate(lambda x: 1.0, 0.0, 1.0)
        assert res.value == pytest.approx(1.0, rel=1e-14)

    def test_integrable_endpoint_singularity(self):
        # x^(-1/4) on [0, 1] has the closed-form antiderivative (4/3) x^(3/4)
        res = integrate(lambda x: x ** -0.25, 0.0, 1.0, QuadratureRule(abs_tol=1e-10))
        assert res.value == pytest.approx(4.0 / 3.0, rel=1e-8)

    def test_gamma_shaped_tail(self):
        # mimics the normalization integrand; Gamma(1.6) is the oracle
        res = integrate(lambda x: x**0.6 * math.exp(-x), 0.0, 40.0)
        assert res.value == pytest.approx(float(gamma(1.6)), rel=1e-10)

    def test_simpson_exact_on_cubics(self):
        res = integrate(lambda x: 4.0 * x**3 - 1.5 * x**2 + x - 2.0, 0.0, 2.0)
        exact = 16.0 - 4.0 + 2.0 - 4.0
        assert res.value == pytest.approx(exact, rel=1e-14)

    def test_gauss_exact_on_high_degree_polynomial(self):
        coeffs = RNG.uniform(-1.0, 1.0, 24)  # degree 23: exact for 12-node panels
        exact = sum(c / (k + 1) for k, c in enumerate(coeffs))

        def poly(x):
            return sum(c * x**k for k, c in enumerate(coeffs))

        rule = QuadratureRule(kind=QuadKind.GAUSS_LEGENDRE_COMPOSITE, limit=4)
        res = integrate(poly, 0.0, 1.0, rule)
        assert res.value == pytest.approx(exact, rel=1e-14)

    def test_gauss_matches_simpson_on_smooth(self):
        f = lambda x: math.sin(3 * x) * math.exp(-x)
        a = integrate(f, 0.0, 2.0).value
        b = integrate(f, 0.0, 2.0, QuadratureRule(kind=QuadKind.GAUSS_LEGENDRE_COMPOSITE, limit=16)).value
        assert a == pytest.approx(b, rel=1e-12)

    def test_tolerance_failure_carries_estimate(self):
        rule = QuadratureRule(abs_tol=1e-14, rel_tol=1e-14, limit=3)
        with pytest.raises(QuadratureToleranceError) as info:
            integrate(lambda x: math.exp(-x) / (1e-6 + x) ** 0.9, 0.0, 1.0, rule)
        assert math.isfinite(info.value.value)
        assert info.value.est_error > 0

    def test_bad_limits(self):
        with pytest.raises(ValueError):
            integrate(lambda x: x, 1.0, 0.0)
        with pytest.raises(ValueError):
            integrate(lambda x: x, 0.0, math.inf)

    def test_rule_validation(self):
        with pytest.raises(ValueError):
            QuadratureRule(abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureRule(limit=0)
