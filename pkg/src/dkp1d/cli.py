"""Command-line entry point wiring all modules together.

Subcommands: ``spectrum``, ``wavefunction``, ``current``, ``oracle``
(levels table or mismatch scan), ``verify`` (invariant suites or the
single-representation algebra report), ``dump betas``, ``check parity``,
``report`` (CSV tables plus rendered figures), and a hidden ``debug``
evaluator for the special functions.

Exit codes: 0 success, 1 numeric failure, 2 domain error (critical
coupling, empty spectrum without --allow-empty).  Errors land on stderr as
a one-line JSON object {code, message, context}.  Output is deterministic:
identical flags produce byte-identical bytes; timestamps appear only with
--with-metadata.  Reals are printed with 17 significant digits so CSV
round-trips doubles exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from . import oracle as oracle_mod
from . import spinor as spinor_mod
from . import verify as verify_mod
from . import wavefunction as wf
from .algebra import Spin, build_representation, projector_ok, verify_algebra, verify_conjugation
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
)
from .special import kummer_m, laguerre
from .spectrum import CouplingConfig, effective_params, energy_level, spectrum

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_DOMAIN = 2

#: Environment variable naming the default directory for --out paths.
OUTPUT_DIR_ENV = "DKP1D_OUTPUT_DIR"

_DOMAIN_ERRORS = (CriticalCouplingError, FreeCaseError, NoBoundStatesError, NoRootInBracketError)
_NUMERIC_ERRORS = (
    QuadratureToleranceError,
    KummerConvergenceError,
    OdeIntegrationError,
    BracketExhaustedError,
    ArithmeticError,
)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(text: str, out: str | None) -> None:
    out = _resolve_out(out)
    if out is None:
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _csv(header: list[str], rows: list[list], metadata: bool) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    if metadata:
        lines.append(f"# dkp1d {__version__} generated-at {datetime.now(timezone.utc).isoformat()}")
    return "\n".join(lines) + "\n"


def _json_text(payload: dict, metadata: bool) -> str:
    if metadata:
        payload = dict(payload)
        payload["metadata"] = {
            "version": __version__,
            "generated_at": datetime.now(timezone.utc).isoformat(),
        }
    return json.dumps(payload, indent=2) + "\n"


def _error_line(code: str, message: str, context: dict) -> None:
    sys.stderr.write(json.dumps({"code": code, "message": message, "context": context}) + "\n")


def _config_from(args, spin: int | None = None) -> CouplingConfig:
    spin_val = spin if spin is not None else getattr(args, "spin", 0)
    return CouplingConfig(m=args.m, g1=args.g1, g2=args.g2, spin=Spin(spin_val))


def _params_dict(args, keys) -> dict:
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _add_common(p: argparse.ArgumentParser, *, fmt: bool = True) -> None:
    if fmt:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout; relative paths join $DKP1D_OUTPUT_DIR)")
    p.add_argument("--seed", type=int, default=None, help="reserved; accepted but unused (no stochastic component)")
    p.add_argument("--with-metadata", action="store_true", help="append a version/timestamp footer")


def _add_physics(p: argparse.ArgumentParser, *, spin: bool = True) -> None:
    p.add_argument("--m", type=float, default=1.0, help="boson mass (natural units)")
    p.add_argument("--g1", type=float, default=0.3, help="minimal coupling strength")
    p.add_argument("--g2", type=float, default=0.0, help="nonminimal coupling strength")
    if spin:
        p.add_argument("--spin", type=int, choices=(0, 1), default=0)


def _state_row(config: CouplingConfig, st) -> dict:
    return {
        "n": st.n,
        "energy": st.energy,
        "s": st.s,
        "gamma": st.n + st.s,
        "lambda": st.lam,
        "binding_energy": config.m - abs(st.energy),
    }


def cmd_spectrum(args) -> int:
    config = _config_from(args)
    params = _params_dict(args, ("m", "g1", "g2", "spin", "n_max", "level_cap", "format"))
    try:
        states = spectrum(config, args.n_max, level_cap=args.level_cap)
    except NoBoundStatesError as exc:
        if not args.allow_empty:
            raise
        if args.format == "json":
            payload = {"params": params, "outcome": "no_bound_states", "detail": str(exc), "states": []}
            _write(_json_text(payload, args.with_metadata), args.out)
        else:
            _write(_csv(["n", "energy", "s", "gamma", "lambda", "binding_energy"], [], args.with_metadata), args.out)
            _error_line("no_bound_states", str(exc), {"reported_as": "data", "exit": 0})
        return EXIT_OK
    rows = [_state_row(config, st) for st in states]
    if args.format == "json":
        payload = {"params": params, "outcome": "ok", "states": rows}
        _write(_json_text(payload, args.with_metadata), args.out)
    else:
        header = ["n", "energy", "s", "gamma", "lambda", "binding_energy"]
        _write(_csv(header, [[r[h] for h in header] for r in rows], args.with_metadata), args.out)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    config = _config_from(args)
    ef = wf.eigenfunction(config, args.n)
    xs = wf.default_grid(ef, samples=args.samples, x_max=args.x_max)
    samples = wf.sample(ef, xs)
    header = ["x", "phi", "dphi", "j0", "j1"]
    rows = [[s.x, s.phi, s.dphi, s.j0, s.j1] for s in samples]
    if args.format == "json":
        payload = {
            "params": _params_dict(args, ("m", "g1", "g2", "spin", "n", "samples", "x_max")),
            "state": _state_row(config, ef.state),
            "norm_const": ef.norm_const,
            "columns": header,
            "rows": rows,
        }
        _write(_json_text(payload, args.with_metadata), args.out)
    else:
        _write(_csv(header, rows, args.with_metadata), args.out)
    return EXIT_OK


def cmd_current(args) -> int:
    config = _config_from(args)
    ef = wf.eigenfunction(config, args.n)
    weights = (args.c_plus, args.c_minus)
    xs = wf.default_grid(ef, samples=args.samples, x_max=args.x_max)
    rows = []
    for x in xs:
        x = float(x)
        if config.spin is Spin.ZERO:
            sp = spinor_mod.assemble_spin0(ef, x)
        else:
            sp = spinor_mod.assemble_spin1(ef, weights, x)
        matrix = spinor_mod.current(sp)
        closed = spinor_mod.current_closed_form(ef, weights, x)
        rows.append([x, matrix.j0, closed.j0, matrix.j1, closed.j1])
    header = ["x", "j0_matrix", "j0_closed", "j1_matrix", "j1_closed"]
    if args.format == "json":
        payload = {
            "params": _params_dict(args, ("m", "g1", "g2", "spin", "n", "samples", "x_max", "c_plus", "c_minus")),
            "columns": header,
            "rows": rows,
        }
        _write(_json_text(payload, args.with_metadata), args.out)
    else:
        _write(_csv(header, rows, args.with_metadata), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    config = _config_from(args)
    opts = oracle_mod.OracleOptions(ode_tol=args.ode_tol, energy_tol=args.energy_tol)
    if args.mode == "scan":
        grid = np.linspace(args.e_min, args.e_max, args.points)
        points = oracle_mod.scan_mismatch(config, grid, opts)
        header = ["energy", "mismatch", "node_count", "error"]
        rows = [
            [p.energy, p.mismatch, -1 if p.node_count is None else p.node_count, p.error or ""]
            for p in points
        ]
        payload = {
            "params": _params_dict(args, ("m", "g1", "g2", "spin", "e_min", "e_max", "points", "ode_tol")),
            "sign_changes": oracle_mod.count_sign_changes(points),
            "columns": header,
            "rows": rows,
        }
    else:
        rows = []
        for n in range(args.n_max + 1):
            analytic = energy_level(config, n)
            res = oracle_mod.solve_level(config, n, opts)
            rows.append(
                [n, analytic.energy, res.energy, abs(res.energy - analytic.energy), res.node_count, res.iterations]
            )
        header = ["n", "E_analytic", "E_oracle", "abs_diff", "node_count", "iterations"]
        payload = {
            "params": _params_dict(args, ("m", "g1", "g2", "spin", "n_max", "ode_tol", "energy_tol")),
            "columns": header,
            "rows": rows,
        }
    if args.format == "json":
        _write(_json_text(payload, args.with_metadata), args.out)
    else:
        _write(_csv(header, rows, args.with_metadata), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = args.suite_flag or args.suite
    if suite == "algebra" and args.spin is not None:
        rep = build_representation(Spin(args.spin))
        report = verify_algebra(rep)
        conj = verify_conjugation(rep)
        payload = {
            "spin": args.spin,
            "max_residual": report.max_residual,
            "projector_ok": projector_ok(rep),
            "conjugation_ok": conj.anticommute_beta
            and conj.anticommute_commutator
            and conj.transverse_commute,
        }
        _write(_json_text(payload, args.with_metadata), args.out)
        return EXIT_OK if payload["max_residual"] == 0 and payload["projector_ok"] and payload["conjugation_ok"] else EXIT_NUMERIC
    report = verify_mod.verify_suite(suite, fast=not args.slow)
    _write(_json_text(report, args.with_metadata), args.out)
    return EXIT_OK if report["passed"] else EXIT_NUMERIC


def cmd_dump(args) -> int:
    rep = build_representation(Spin(args.spin))
    payload = {
        "spin": args.spin,
        "dim": rep.dim,
        "indexing": "row-major, 0-based; mu labels 0..3 with metric diag(1,-1,-1,-1)",
        "beta": [b.tolist() for b in rep.beta],
        "eta0": rep.eta0.tolist(),
        "projector": rep.projector.tolist(),
        "conjugator": rep.conjugator.tolist(),
    }
    _write(_json_text(payload, args.with_metadata), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    config = _config_from(args, spin=0)
    ef = wf.eigenfunction(config, args.n)
    scan = wf.connection_scan(ef, args.delta, args.eps)
    header = ["delta", "eps", "r_odd", "r_even", "slope_even_fit", "slope_expected"]
    rows = [
        [args.delta, e, ro, re, scan["slope_even"], scan["slope_expected"]]
        for e, ro, re in zip(scan["eps"], scan["r_odd"], scan["r_even"])
    ]
    if args.format == "json":
        payload = {
            "params": _params_dict(args, ("m", "g1", "g2", "n", "delta", "eps")),
            "columns": header,
            "rows": rows,
        }
        _write(_json_text(payload, args.with_metadata), args.out)
    else:
        _write(_csv(header, rows, args.with_metadata), args.out)
    return EXIT_OK


def cmd_debug(args) -> int:
    if args.what == "laguerre":
        value = laguerre(args.n, args.a, args.z)
    else:
        value = kummer_m(args.a, args.b, args.z)
    _write(_fmt(value) + "\n", args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    from . import report as report_mod

    summary = report_mod.render_report(
        config=_config_from(args),
        n_max=args.n_max,
        outdir=_resolve_out(args.outdir) or args.outdir,
        with_scan=args.with_scan,
        with_parity=args.with_parity,
        scan_points=args.scan_points,
    )
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dkp1d",
        description=(
            "Bound states of spin-0 and spin-1 DKP bosons in a mixed "
            "minimal/nonminimal inversely linear vector background: closed-form "
            "spectrum, eigenfunctions, currents, and an independent ODE oracle."
        ),
    )
    parser.add_argument("--version", action="version", version=f"dkp1d {__version__}")
    # `debug` stays callable but out of the usage line
    sub = parser.add_subparsers(
        dest="command",
        required=True,
        metavar="{spectrum,wavefunction,current,oracle,verify,dump,check,report}",
    )

    p = sub.add_parser("spectrum", help="closed-form bound-state table")
    _add_physics(p)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--level-cap", type=int, default=64)
    p.add_argument("--allow-empty", action="store_true", help="report an empty spectrum as data (exit 0)")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", help="whole-line eigenfunction grid export")
    _add_physics(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--samples", type=int, default=wf.DEFAULT_SAMPLES)
    p.add_argument("--x-max", type=float, default=None, help="half-width of the grid (default 40/lambda)")
    _add_common(p)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("current", help="matrix-definition vs closed-form current densities")
    _add_physics(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--c-plus", type=float, default=spinor_mod.DEFAULT_CHANNEL_WEIGHTS[0])
    p.add_argument("--c-minus", type=float, default=spinor_mod.DEFAULT_CHANNEL_WEIGHTS[1])
    _add_common(p)
    p.set_defaults(func=cmd_current)

    p = sub.add_parser("oracle", help="independent shooting-method eigenvalues")
    p.add_argument("mode", nargs="?", choices=("levels", "scan"), default="levels")
    _add_physics(p)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--ode-tol", type=float, default=oracle_mod.DEFAULT_OPTIONS.ode_tol)
    p.add_argument("--energy-tol", type=float, default=oracle_mod.DEFAULT_OPTIONS.energy_tol)
    p.add_argument("--e-min", type=float, default=-0.999)
    p.add_argument("--e-max", type=float, default=0.999)
    p.add_argument("--points", type=int, default=200)
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", choices=verify_mod.SUITES, default="all")
    p.add_argument("--suite", dest="suite_flag", choices=verify_mod.SUITES, default=None)
    p.add_argument("--spin", type=int, choices=(0, 1), default=None,
                   help="with 'algebra': emit the single-representation JSON report")
    p.add_argument("--slow", action="store_true", help="run the oracle suite at full tolerances")
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="export representation matrices as JSON")
    p.add_argument("what", choices=("betas",))
    p.add_argument("--spin", type=int, choices=(0, 1), default=0)
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("check", help="parity selection diagnostics")
    p.add_argument("what", choices=("parity",))
    _add_physics(p, spin=False)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--delta", type=float, default=verify_mod.PARITY_DELTA)
    p.add_argument("--eps", type=float, nargs="+", default=list(verify_mod.PARITY_EPS))
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("debug")  # hidden spot-check evaluator
    p.add_argument("what", choices=("laguerre", "kummer"))
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_debug)

    p = sub.add_parser("report", help="CSV tables plus rendered figures in an output directory")
    _add_physics(p)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--outdir", default="dkp1d-report")
    p.add_argument("--with-scan", action="store_true", help="include the oracle mismatch scan (slower)")
    p.add_argument("--with-parity", action="store_true", help="include the parity residual diagnostics")
    p.add_argument("--scan-points", type=int, default=120)
    p.add_argument("--seed", type=int, default=None, help="reserved; accepted but unused")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        _error_line(type(exc).__name__, str(exc), {"exit": EXIT_DOMAIN})
        return EXIT_DOMAIN
    except _NUMERIC_ERRORS as exc:
        _error_line(type(exc).__name__, str(exc), {"exit": EXIT_NUMERIC})
        return EXIT_NUMERIC
    except ValueError as exc:
        _error_line("ValueError", str(exc), {"exit": EXIT_DOMAIN})
        return EXIT_DOMAIN


def console_main() -> None:
    sys.exit(main())
