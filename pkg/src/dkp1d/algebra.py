"""Beta-matrix representations of the Duffin-Kemmer-Petiau (DKP) algebra.

Builds the five-dimensional (spin-0) and ten-dimensional (spin-1)
irreducible representations of

    beta^mu beta^nu beta^lam + beta^lam beta^nu beta^mu
        = g^{mu nu} beta^lam + g^{lam nu} beta^mu,

with metric g = diag(1, -1, -1, -1), together with the derived matrices
eta0 = 2 beta^0 beta^0 - 1, the spin projector P, and the charge-conjugation
matrix C = eta0 eta1 (phase fixed to +1).

Everything here is exact integer arithmetic (int64 entries in {-1, 0, 1};
triple products stay far below overflow), so algebra checks report exact
residuals rather than float tolerances.

Conventions: matrices are stored row-major with 0-based internal indexing;
the Lorentz label mu runs over {0, 1, 2, 3} and indices are lowered with
beta_mu = g_{mu nu} beta^nu.

One caveat that the verification report keeps explicit: C = eta0 eta1
anticommutes with beta^0 and beta^1 -- the only two matrices that enter
one-dimensional motion along x, which is what charge conjugation of the
reduced problem needs -- while it *commutes* with the transverse beta^2 and
beta^3.  The latter is forced by the algebra itself (eta^mu anticommutes
with beta^nu for nu != mu, so passing beta^2 through eta0 eta1 flips sign
twice).  Both facts are checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product

import numpy as np

METRIC = (1, -1, -1, -1)

#: Lorentz indices whose beta matrices act on one-dimensional motion
#: along x (time + the motion axis); charge conjugation must anticommute
#: with exactly these.
DYNAMICAL_INDICES = (0, 1)
TRANSVERSE_INDICES = (2, 3)


class Spin(Enum):
    """Boson sector selector: spin-0 (dim 5) or spin-1 (dim 10)."""

    ZERO = 0
    ONE = 1

    @property
    def dim(self) -> int:
        return 5 if self is Spin.ZERO else 10


@dataclass(frozen=True, eq=False)
class BetaRepresentation:
    """One spin sector's matrices: the four betas plus derived operators."""

    spin: Spin
    dim: int
    beta: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    eta0: np.ndarray
    projector: np.ndarray
    conjugator: np.ndarray


@dataclass(frozen=True)
class AlgebraReport:
    max_residual: int
    failing_triples: list[tuple[int, int, int]]


@dataclass(frozen=True)
class ConjugationReport:
    """Exact (anti)commutation checks for the charge-conjugation matrix.

    ``anticommute_beta`` / ``anticommute_commutator`` cover the dynamical
    pair mu in {0, 1}; ``transverse_commute`` records the complementary
    identity C beta^mu = +beta^mu C for mu in {2, 3}.
    """

    anticommute_beta: bool
    anticommute_commutator: bool
    transverse_commute: bool


def _spin0_betas() -> list[np.ndarray]:
    # Block layout: [[theta, 0], [0, 0]] for beta^0 and
    # [[0, rho_i], [-rho_i^T, 0]] for beta^i, with blocks of size 2 and 3.
    b = [np.zeros((5, 5), dtype=np.int64) for _ in range(4)]
    b[0][0, 1] = 1
    b[0][1, 0] = 1
    for i in (1, 2, 3):
        b[i][0, 1 + i] = -1  # first row of rho_i
        b[i][1 + i, 0] = 1   # minus its transpose
    return b


def _levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def _spin1_betas() -> list[np.ndarray]:
    # Block layout over sizes (1, 3, 3, 3); -i s_i has the real integer
    # entries (-i s_i)_{jk} = -eps_{ijk}.
    b = [np.zeros((10, 10), dtype=np.int64) for _ in range(4)]
    for a in range(3):
        b[0][1 + a, 4 + a] = 1
        b[0][4 + a, 1 + a] = 1
    for i in (1, 2, 3):
        b[i][0, 4 + (i - 1)] = 1
        b[i][4 + (i - 1), 0] = -1
        for j in range(3):
            for k in range(3):
                v = -_levi_civita(i - 1, j, k)
                b[i][1 + j, 7 + k] = v
                b[i][7 + j, 1 + k] = v
    return b


@lru_cache(maxsize=None)
def build_representation(spin: Spin) -> BetaRepresentation:
    """Construct the beta matrices and derived operators for one sector.

    The projector is computed from the contraction beta^mu beta_mu
    ((B - 1)/3 for spin 0, B - 2 for spin 1) and verified against its
    known diagonal form before the representation is returned.
    """
    betas = _spin0_betas() if spin is Spin.ZERO else _spin1_betas()
    dim = spin.dim
    eye = np.eye(dim, dtype=np.int64)

    contraction = sum(METRIC[mu] * betas[mu] @ betas[mu] for mu in range(4))
    if spin is Spin.ZERO:
        numerator = contraction - eye
        if np.any(numerator % 3):
            raise ArithmeticError("spin-0 projector numerator not divisible by 3")
        projector = numerator // 3
        expected = np.diag(np.array([1, 0, 0, 0, 0], dtype=np.int64))
    else:
        projector = contraction - 2 * eye
        expected = np.diag(np.array([1] * 4 + [0] * 6, dtype=np.int64))
    if not np.array_equal(projector, expected):
        raise ArithmeticError(f"projector for {spin} does not match its diagonal form")

    eta0 = 2 * betas[0] @ betas[0] - eye
    eta1 = 2 * betas[1] @ betas[1] + eye  # eta^mu = 2 beta^mu beta^mu - g^{mu mu}
    conjugator = eta0 @ eta1

    return BetaRepresentation(
        spin=spin,
        dim=dim,
        beta=tuple(betas),
        eta0=eta0,
        projector=projector,
        conjugator=conjugator,
    )


def verify_algebra(rep: BetaRepresentation) -> AlgebraReport:
    """Check the trilinear algebra over all 64 index triples, exactly.

    The residual beta^mu beta^nu beta^lam + beta^lam beta^nu beta^mu
    - g^{mu nu} beta^lam - g^{lam nu} beta^mu is formed in integer
    arithmetic; a nonzero entry anywhere is reported, never raised.
    """
    b = rep.beta
    pair = {(mu, nu): b[mu] @ b[nu] for mu in range(4) for nu in range(4)}
    max_residual = 0
    failing: list[tuple[int, int, int]] = []
    for mu, nu, lam in product(range(4), repeat=3):
        res = pair[(mu, nu)] @ b[lam] + pair[(lam, nu)] @ b[mu]
        if mu == nu:
            res = res - METRIC[mu] * b[lam]
        if lam == nu:
            res = res - METRIC[lam] * b[mu]
        worst = int(np.abs(res).max())
        if worst:
            failing.append((mu, nu, lam))
            max_residual = max(max_residual, worst)
    return AlgebraReport(max_residual=max_residual, failing_triples=failing)


def verify_conjugation(rep: BetaRepresentation) -> ConjugationReport:
    """Exact (anti)commutation checks for C = eta0 eta1.

    Anticommutation with beta^mu and with [P, beta^mu] is required for the
    dynamical pair mu in {0, 1}; for the transverse pair the algebra forces
    commutation instead, which is verified as well.
    """
    c = rep.conjugator
    p = rep.projector

    def _anti(mat: np.ndarray) -> bool:
        return not np.any(c @ mat + mat @ c)

    def _comm(mat: np.ndarray) -> bool:
        return not np.any(c @ mat - mat @ c)

    anticommute_beta = all(_anti(rep.beta[mu]) for mu in DYNAMICAL_INDICES)
    anticommute_commutator = all(
        _anti(p @ rep.beta[mu] - rep.beta[mu] @ p) for mu in DYNAMICAL_INDICES
    )
    transverse_commute = all(
        _comm(rep.beta[mu]) and _comm(p @ rep.beta[mu] - rep.beta[mu] @ p)
        for mu in TRANSVERSE_INDICES
    )
    return ConjugationReport(
        anticommute_beta=anticommute_beta,
        anticommute_commutator=anticommute_commutator,
        transverse_commute=transverse_commute,
    )


def projector_ok(rep: BetaRepresentation) -> bool:
    """P^2 = P and P = P^T, exactly."""
    p = rep.projector
    return np.array_equal(p @ p, p) and np.array_equal(p, p.T)


def eta0_ok(rep: BetaRepresentation) -> bool:
    """eta0 is diagonal with entries +-1 (so eta0 eta0 = identity)."""
    e = rep.eta0
    eye = np.eye(rep.dim, dtype=np.int64)
    diag_pm1 = np.array_equal(e, np.diag(np.diag(e))) and set(np.diag(e)) <= {-1, 1}
    return diag_pm1 and np.array_equal(e @ e, eye)
