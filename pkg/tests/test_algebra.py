"""Exact checks of the beta-matrix representations."""

import numpy as np
import pytest

from dkp1d.algebra import (
    DYNAMICAL_INDICES,
    METRIC,
    Spin,
    build_representation,
    eta0_ok,
    projector_ok,
    verify_algebra,
    verify_conjugation,
)


@pytest.fixture(params=[Spin.ZERO, Spin.ONE], ids=["spin0", "spin1"])
def rep(request):
    return build_representation(request.param)


def test_dimensions_and_integer_entries(rep):
    assert rep.dim == (5 if rep.spin is Spin.ZERO else 10)
    for b in rep.beta:
        assert b.shape == (rep.dim, rep.dim)
        assert np.issubdtype(b.dtype, np.integer)
        assert set(np.unique(b)) <= {-1, 0, 1}


def test_spin0_beta0_has_exactly_the_theta_block():
    b0 = build_representation(Spin.ZERO).beta[0]
    nz = list(zip(*np.nonzero(b0)))
    assert nz == [(0, 1), (1, 0)]
    assert b0[0, 1] == b0[1, 0] == 1


def test_projector_diagonal_forms():
    p0 = build_representation(Spin.ZERO).projector
    assert np.array_equal(p0, np.diag([1, 0, 0, 0, 0]))
    p1 = build_representation(Spin.ONE).projector
    assert np.array_equal(p1, np.diag([1, 1, 1, 1, 0, 0, 0, 0, 0, 0]))


def test_algebra_residual_is_exactly_zero(rep):
    report = verify_algebra(rep)
    assert report.max_residual == 0
    assert report.failing_triples == []


def test_beta0_is_tripotent(rep):
    # mu = nu = lam = 0 case of the algebra: 2 b0^3 = 2 g00 b0.
    b0 = rep.beta[0]
    assert np.array_equal(2 * b0 @ b0 @ b0, 2 * b0)


def test_projector_idempotent_and_selfadjoint(rep):
    assert projector_ok(rep)


def test_eta0_diagonal_unit_square(rep):
    assert eta0_ok(rep)
    eye = np.eye(rep.dim, dtype=np.int64)
    assert np.array_equal(rep.eta0, 2 * rep.beta[0] @ rep.beta[0] - eye)


def test_conjugator_construction(rep):
    eye = np.eye(rep.dim, dtype=np.int64)
    eta1 = 2 * rep.beta[1] @ rep.beta[1] + eye
    assert np.array_equal(rep.conjugator, rep.eta0 @ eta1)
    # unitary (real orthogonal) with integer entries
    assert np.array_equal(rep.conjugator @ rep.conjugator.T, eye)


def test_conjugation_report(rep):
    report = verify_conjugation(rep)
    assert report.anticommute_beta
    assert report.anticommute_commutator
    assert report.transverse_commute


def test_double_conjugation_commutes(rep):
    # Two anticommutations compose to a commutation: C^2 commutes with
    # every dynamical beta.
    c2 = rep.conjugator @ rep.conjugator
    for mu in DYNAMICAL_INDICES:
        b = rep.beta[mu]
        assert np.array_equal(c2 @ b, b @ c2)


def test_contraction_matches_projector_formula(rep):
    contraction = sum(METRIC[mu] * rep.beta[mu] @ rep.beta[mu] for mu in range(4))
    eye = np.eye(rep.dim, dtype=np.int64)
    if rep.spin is Spin.ZERO:
        assert np.array_equal(contraction, 3 * rep.projector + eye)
    else:
        assert np.array_equal(contraction, rep.projector + 2 * eye)
