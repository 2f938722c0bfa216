"""Bound states of spin-0 and spin-1 DKP bosons in an inversely linear
mixed minimal/nonminimal vector background.

Library layout mirrors the computation: exact beta-matrix algebra
(:mod:`dkp1d.algebra`), special functions and quadrature
(:mod:`dkp1d.special`), the closed-form Kratzer-type spectrum
(:mod:`dkp1d.spectrum`), whole-line eigenfunctions
(:mod:`dkp1d.wavefunction`), spinor assembly and currents
(:mod:`dkp1d.spinor`), and an independent shooting-method eigenvalue
oracle (:mod:`dkp1d.oracle`).
"""

from .algebra import (
    BetaRepresentation,
    Spin,
    build_representation,
    verify_algebra,
    verify_conjugation,
)
from .errors import (
    BracketExhaustedError,
    CriticalCouplingError,
    DkpError,
    FreeCaseError,
    KummerConvergenceError,
    NoBoundStatesError,
    NoRootInBracketError,
    OdeIntegrationError,
    QuadratureToleranceError,
    WeightNormalizationError,
)
from .oracle import OracleOptions, OracleResult, ScanPoint, scan_mismatch, solve_level
from .special import QuadKind, QuadratureRule, integrate, kummer_m, laguerre
from .spectrum import (
    BoundState,
    CouplingConfig,
    EffectiveParams,
    effective_params,
    energy_level,
    exponent_s,
    nonrelativistic_energy,
    spectrum,
)
from .spinor import (
    CurrentSample,
    DKPSpinor,
    assemble_spin0,
    assemble_spin1,
    charge_conjugate,
    current,
    current_closed_form,
)
from .wavefunction import (
    Eigenfunction,
    Parity,
    WavefunctionSample,
    connection_condition_residual,
    eigenfunction,
    evaluate,
    normalize,
    orthogonality_matrix,
    wronskian_limit_check,
)

__version__ = "0.1.0"

__all__ = [
    "BetaRepresentation",
    "BoundState",
    "BracketExhaustedError",
    "CouplingConfig",
    "CriticalCouplingError",
    "CurrentSample",
    "DKPSpinor",
    "DkpError",
    "EffectiveParams",
    "Eigenfunction",
    "FreeCaseError",
    "KummerConvergenceError",
    "NoBoundStatesError",
    "NoRootInBracketError",
    "OdeIntegrationError",
    "OracleOptions",
    "OracleResult",
    "Parity",
    "QuadKind",
    "QuadratureRule",
    "QuadratureToleranceError",
    "ScanPoint",
    "Spin",
    "WavefunctionSample",
    "WeightNormalizationError",
    "assemble_spin0",
    "assemble_spin1",
    "build_representation",
    "charge_conjugate",
    "connection_condition_residual",
    "current",
    "current_closed_form",
    "effective_params",
    "eigenfunction",
    "energy_level",
    "evaluate",
    "exponent_s",
    "integrate",
    "kummer_m",
    "laguerre",
    "nonrelativistic_energy",
    "normalize",
    "orthogonality_matrix",
    "scan_mismatch",
    "solve_level",
    "spectrum",
    "verify_algebra",
    "verify_conjugation",
    "wronskian_limit_check",
]
