"""Shooting-method oracle against the closed-form spectrum.

The oracle never evaluates the quantization formula; agreement between the
two is the package's central cross-validation.
"""

import math

import numpy as np
import pytest

from dkp1d.errors import CriticalCouplingError, NoRootInBracketError
from dkp1d.oracle import (
    OracleOptions,
    count_sign_changes,
    scan_mismatch,
    solve_level,
)
from dkp1d.spectrum import CouplingConfig, energy_level

# unit-test knobs: cheaper than the defaults, still far below the 1e-6 gates
OPTS = OracleOptions(ode_tol=1e-10, energy_tol=1e-10)
SCAN_OPTS = OracleOptions(ode_tol=1e-7)


class TestSolveLevel:
    def test_ground_state_reference(self):
        res = solve_level(CouplingConfig(1.0, 0.3, 0.0), 0, OPTS)
        assert res.energy == pytest.approx(0.9486832980505138, abs=1e-8)
        assert res.node_count == 0
        assert abs(res.mismatch) < 1e-6
        assert res.bracket[0] <= res.energy <= res.bracket[1]
        assert res.iterations > 0

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_mixed_coupling_levels(self, n):
        cfg = CouplingConfig(1.0, 0.3, 0.2)
        res = solve_level(cfg, n, OPTS)
        ref = energy_level(cfg, n).energy
        assert abs(res.energy - ref) / abs(ref) < 1e-7
        assert res.node_count == n

    def test_antiparticle_branch(self):
        cfg = CouplingConfig(1.0, -0.3, 0.0)
        res = solve_level(cfg, 1, OPTS)
        ref = energy_level(cfg, 1).energy
        assert ref < 0.0
        assert abs(res.energy - ref) < 1e-7

    def test_gamma_reconstruction(self):
        cfg = CouplingConfig(1.0, 0.2, 0.1)
        for n in (0, 2):
            res = solve_level(cfg, n, OPTS)
            st = energy_level(cfg, n)
            gamma = res.energy * cfg.g1 / math.sqrt((1.0 - res.energy) * (1.0 + res.energy))
            assert gamma == pytest.approx(n + st.s, rel=1e-6)

    def test_mass_scaling(self):
        e1 = solve_level(CouplingConfig(1.0, 0.3, 0.0), 0, OPTS).energy
        e2 = solve_level(CouplingConfig(2.0, 0.3, 0.0), 0, OPTS).energy
        assert e2 / 2.0 == pytest.approx(e1, rel=1e-6)

    def test_no_bound_states_for_pure_nonminimal(self):
        cheap = OracleOptions(ode_tol=1e-8, null_scan_points=81)
        with pytest.raises(NoRootInBracketError):
            solve_level(CouplingConfig(1.0, 0.0, 0.3), 0, cheap)

    def test_gate_errors_propagate(self):
        with pytest.raises(CriticalCouplingError):
            solve_level(CouplingConfig(1.0, 0.5, 0.1), 0, OPTS)

    def test_negative_level_rejected(self):
        with pytest.raises(ValueError):
            solve_level(CouplingConfig(1.0, 0.3, 0.0), -2, OPTS)


class TestScanMismatch:
    def test_sign_change_straddles_known_eigenvalue(self):
        cfg = CouplingConfig(1.0, 0.3, 0.0)
        e0 = energy_level(cfg, 0).energy
        points = scan_mismatch(cfg, [e0 - 1e-3, e0 + 1e-3], SCAN_OPTS)
        assert points[0].error is None and points[1].error is None
        assert points[0].mismatch * points[1].mismatch < 0.0

    def test_no_sign_changes_without_minimal_coupling(self):
        cfg = CouplingConfig(1.0, 0.0, 0.3)
        grid = np.linspace(-0.995, 0.995, 200)
        points = scan_mismatch(cfg, grid, SCAN_OPTS, want_nodes=False)
        assert all(p.error is None for p in points)
        assert count_sign_changes(points) == 0

    def test_wrong_branch_has_no_roots(self):
        # for g1 > 0 every bound state sits at E > 0; the E < 0 half is empty
        cfg = CouplingConfig(1.0, 0.3, 0.0)
        grid = np.linspace(-0.99, -0.05, 60)
        points = scan_mismatch(cfg, grid, SCAN_OPTS, want_nodes=False)
        assert count_sign_changes(points) == 0

    def test_out_of_range_energy_recorded_not_raised(self):
        cfg = CouplingConfig(1.0, 0.3, 0.0)
        points = scan_mismatch(cfg, [0.5, 1.5], SCAN_OPTS, want_nodes=False)
        assert points[0].error is None
        assert points[1].error is not None
        assert math.isnan(points[1].mismatch)

    def test_node_counts_step_across_eigenvalue(self):
        cfg = CouplingConfig(1.0, 0.3, 0.0)
        e0 = energy_level(cfg, 0).energy
        e1 = energy_level(cfg, 1).energy
        mid = 0.5 * (e0 + e1)
        pts = scan_mismatch(cfg, [e0 - 5e-3, mid], SCAN_OPTS)
        assert pts[0].node_count == 0
        assert pts[1].node_count == 1
