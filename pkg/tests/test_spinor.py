"""Spinor assembly and current cross-validation.

The matrix-definition current (psi^dagger eta0 beta^mu psi)/2 exercises the
representation end to end and serves as the oracle for the reduced closed
forms, and vice versa.
"""

import dataclasses
import math

import numpy as np
import pytest

from dkp1d.algebra import Spin
from dkp1d.errors import WeightNormalizationError
from dkp1d.spectrum import CouplingConfig
from dkp1d.spinor import (
    assemble_spin0,
    assemble_spin1,
    charge_conjugate,
    current,
    current_closed_form,
)
from dkp1d.wavefunction import eigenfunction, evaluate

CFG = CouplingConfig(1.0, 0.3, 0.2)
CFG_SPIN1 = CouplingConfig(1.0, 0.3, 0.2, Spin.ONE)

RNG = np.random.default_rng(424242)


def random_positions(lam: float, count: int) -> list[float]:
    mags = np.exp(RNG.uniform(math.log(0.05), math.log(30.0), count)) / lam
    signs = RNG.choice((-1.0, 1.0), count)
    return [float(v) for v in mags * signs]


class TestAssembleSpin0:
    def test_upper_components_vanish(self):
        ef = eigenfunction(CFG, 1)
        for x in random_positions(ef.state.lam, 10):
            sp = assemble_spin0(ef, x)
            assert sp.components[3] == 0.0 and sp.components[4] == 0.0

    def test_component_relations(self):
        ef = eigenfunction(CFG, 0)
        x = 0.7
        phi, dphi = evaluate(ef, x)
        sp = assemble_spin0(ef, x)
        e = ef.state.energy
        assert sp.components[0] == phi
        expected = (e + CFG.g1 / abs(x) - 1j * CFG.g2 / abs(x)) * phi / CFG.m
        assert sp.components[1] == pytest.approx(expected, rel=1e-15)
        assert sp.components[2] == pytest.approx(1j * dphi / CFG.m, rel=1e-15)

    def test_origin_limit_is_zero(self):
        ef = eigenfunction(CFG, 0)
        sp = assemble_spin0(ef, 0.0)
        assert not np.any(sp.components)

    def test_pure_minimal_second_component_real(self):
        ef = eigenfunction(CouplingConfig(1.0, 0.3, 0.0), 0)
        sp = assemble_spin0(ef, 1.3)
        assert sp.components[1].imag == 0.0


class TestAssembleSpin1:
    def test_plus_channel_only(self):
        ef = eigenfunction(CFG_SPIN1, 0)
        sp = assemble_spin1(ef, (1.0, 0.0), 0.9)
        nonzero = set(np.nonzero(sp.components)[0])
        assert nonzero == {2, 5, 9}  # psi_3, psi_6, psi_10
        assert sp.components[7] == 0.0  # psi_8 always vanishes

    def test_minus_channel_only(self):
        ef = eigenfunction(CFG_SPIN1, 0)
        sp = assemble_spin1(ef, (0.0, 1.0), 0.9)
        nonzero = set(np.nonzero(sp.components)[0])
        assert nonzero == {0, 1, 4}  # psi_1, psi_2, psi_5

    def test_sigma_flips_only_the_nonminimal_phase(self):
        ef = eigenfunction(CFG_SPIN1, 0)
        plus = assemble_spin1(ef, (1.0, 0.0), 0.9).components[5]
        minus = assemble_spin1(ef, (0.0, 1.0), 0.9).components[1]
        assert plus.real == pytest.approx(minus.real, rel=1e-15)
        assert plus.imag == pytest.approx(-minus.imag, rel=1e-15)

    def test_weight_normalization_enforced(self):
        ef = eigenfunction(CFG_SPIN1, 0)
        with pytest.raises(WeightNormalizationError):
            assemble_spin1(ef, (1.0, 1.0), 0.9)


class TestCurrent:
    @pytest.mark.parametrize("spin", [Spin.ZERO, Spin.ONE], ids=["spin0", "spin1"])
    def test_matrix_matches_closed_form(self, spin):
        cfg = CouplingConfig(1.0, 0.3, 0.2, spin)
        ef = eigenfunction(cfg, 0)
        weights = (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))
        for x in random_positions(ef.state.lam, 25):
            if spin is Spin.ZERO:
                sp = assemble_spin0(ef, x)
            else:
                sp = assemble_spin1(ef, weights, x)
            matrix = current(sp)
            closed = current_closed_form(ef, weights, x)
            assert matrix.j0 == pytest.approx(closed.j0, rel=1e-12)
            assert matrix.j1 == closed.j1 == 0.0

    def test_charge_density_positive_for_particle_branch(self):
        ef = eigenfunction(CFG, 0)
        for x in random_positions(ef.state.lam, 25):
            assert current(assemble_spin0(ef, x)).j0 > 0.0

    def test_nonminimal_strength_never_enters(self):
        # same Phi, g2 zeroed in the assembly only: currents must coincide
        ef = eigenfunction(CFG, 0)
        ef_nog2 = dataclasses.replace(
            ef, config=dataclasses.replace(ef.config, g2=0.0), norm_diagnostics={}
        )
        for x in random_positions(ef.state.lam, 10):
            a = current(assemble_spin0(ef, x))
            b = current(assemble_spin0(ef_nog2, x))
            assert a.j0 == b.j0 and a.j1 == b.j1

    def test_spin_equivalence_single_channel(self):
        cfg0 = CouplingConfig(1.0, 0.3, 0.0)
        cfg1 = CouplingConfig(1.0, 0.3, 0.0, Spin.ONE)
        ef0 = eigenfunction(cfg0, 0)
        ef1 = eigenfunction(cfg1, 0)
        for x in random_positions(ef0.state.lam, 10):
            a = current(assemble_spin0(ef0, x))
            b = current(assemble_spin1(ef1, (1.0, 0.0), x))
            assert b.j0 == pytest.approx(a.j0, rel=1e-12)
            assert a.j1 == b.j1 == 0.0

    def test_closed_form_origin(self):
        ef = eigenfunction(CFG, 0)
        c = current_closed_form(ef, (1.0, 0.0), 0.0)
        assert c.j0 == c.j1 == 0.0


class TestChargeConjugation:
    @pytest.mark.parametrize("spin", [Spin.ZERO, Spin.ONE], ids=["spin0", "spin1"])
    def test_maps_to_sign_flipped_problem(self, spin):
        cfg = CouplingConfig(1.0, 0.3, 0.2, spin)
        cfg_neg = CouplingConfig(1.0, -0.3, 0.2, spin)
        ef = eigenfunction(cfg, 0)
        ef_neg = eigenfunction(cfg_neg, 0)
        weights = (1.0, 0.0)
        for x in (0.4, -1.1, 3.0):
            sp = assemble_spin0(ef, x) if spin is Spin.ZERO else assemble_spin1(ef, weights, x)
            conj = charge_conjugate(sp)
            direct = (
                assemble_spin0(ef_neg, x)
                if spin is Spin.ZERO
                else assemble_spin1(ef_neg, weights, x)
            )
            assert conj.energy == -sp.energy
            # the conjugated spinor is the (-g1, -E) solution up to a global phase
            gap = np.abs(conj.components + direct.components).max()
            assert gap < 1e-14

    def test_current_flips_sign(self):
        ef = eigenfunction(CFG, 0)
        for x in (0.4, -1.1, 3.0):
            sp = assemble_spin0(ef, x)
            j = current(sp)
            j_c = current(charge_conjugate(sp))
            assert j_c.j0 == pytest.approx(-j.j0, abs=1e-15)
            assert j_c.j1 == -j.j1 == 0.0
