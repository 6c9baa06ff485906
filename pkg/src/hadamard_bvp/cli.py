"""Command-line interface.

Commands: bound | check | green (eval|max|grid) | eigen | selftest.
Exit codes: 0 success, 1 selftest failure, 2 usage/validation error,
3 numerical failure, 4 eigenvalue-bound violation (which would falsify the
analytic bound and must never pass silently).

All output is deterministic for identical flags.  Reals in JSON and CSV are
printed with 17 significant digits, which round-trips doubles exactly.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import __version__
from .bounds import lyapunov_report, nonexistence_check
from .coefficient import Constant, Expression, load_table, parse_expr
from .errors import (
    ConvergenceFailure,
    DifferenceInstability,
    DomainInvalid,
    EvalError,
    ExpressionSyntaxError,
    HadamardBVPError,
    QuadratureFailure,
    ResourceLimit,
    UnknownIdentifier,
)
from .fredholm import min_eigenvalue_modulus
from .kernel import green_eval, green_max, _green_xy
from .params import FracParams, validate
from .selftest import run_selftests

__all__ = ["main", "cmd_bound", "cmd_check", "cmd_green", "cmd_eigen", "cmd_selftest"]

_USAGE_ERROR = 2
_NUMERICAL_ERROR = 3
_BOUND_VIOLATION = 4


@dataclass(frozen=True)
class RunReport:
    command: str
    params: Optional[dict]
    payload: dict
    warnings: list
    version: str


def _fmt_real(value: float) -> str:
    return format(float(value), ".17g")


def _to_json(value, indent: int = 0) -> str:
    """Serialize with fixed float formatting (17 significant digits)."""
    if isinstance(value, dict):
        items = ", ".join(f'"{k}": {_to_json(v)}' for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_real(value)
    if value is None:
        return "null"
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return '"' + text + '"'


def _render(report: RunReport, as_json: bool) -> str:
    if as_json:
        return _to_json(
            {
                "command": report.command,
                "params": report.params,
                "payload": report.payload,
                "warnings": report.warnings,
                "version": report.version,
            }
        )
    lines = [f"command: {report.command}"]
    if report.params is not None:
        joined = ", ".join(f"{k}={_fmt_real(v)}" for k, v in report.params.items())
        lines.append(f"params: {joined}")
    for key, value in report.payload.items():
        if isinstance(value, float):
            lines.append(f"{key} = {_fmt_real(value)}")
        elif isinstance(value, list):
            continue  # detail tables are printed by the command itself
        else:
            lines.append(f"{key} = {value}")
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines)


def _real(text: str) -> float:
    """Strict real-number parser for CLI flags.

    Accepts decimal and exponent notation only; the constant name `e` is not
    a value (pass 2.718281828459045), and non-finite values are rejected.
    """
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"value must be finite: {text!r}")
    return value


def _params_from(args) -> FracParams:
    return validate(args.sigma, args.kappa, args.t1, args.t2)


def _params_dict(p: FracParams) -> dict:
    return {"sigma": p.sigma, "kappa": p.kappa, "t1": p.t1, "t2": p.t2}


def cmd_bound(args) -> RunReport:
    p = _params_from(args)
    rep = green_max(p)
    ly = lyapunov_report(p)
    payload = {
        "gamma_sk": ly.gamma_sk,
        "bound": ly.bound,
        "eigen_bound": ly.eigen_bound,
        "omega": rep.omega,
        "mho": rep.mho,
        "x2": rep.x2,
        "delta": rep.delta,
    }
    return RunReport("bound", _params_dict(p), payload, [], __version__)


def _coefficient_from(args):
    if args.q_const is not None:
        return Constant(args.q_const)
    if args.q_expr is not None:
        return Expression(parse_expr(args.q_expr))
    return load_table(args.q_table)


def cmd_check(args) -> RunReport:
    p = _params_from(args)
    q = _coefficient_from(args)
    verdict = nonexistence_check(p, q, tol=args.tol)
    ly = lyapunov_report(p, q_integral=verdict.q_integral, verdict=verdict)
    payload = {
        "gamma_sk": ly.gamma_sk,
        "bound": ly.bound,
        "eigen_bound": ly.eigen_bound,
        "q_integral": verdict.q_integral,
        "verdict": verdict.kind.value,
    }
    return RunReport("check", _params_dict(p), payload, [], __version__)


def cmd_green(args) -> RunReport:
    p = _params_from(args)
    if args.green_cmd == "eval":
        value = green_eval(p, args.t, args.s)
        payload = {"t": args.t, "s": args.s, "value": value}
    elif args.green_cmd == "max":
        rep = green_max(p)
        payload = {
            "delta": rep.delta,
            "x2": rep.x2,
            "t_star": rep.t_star,
            "t_hat": rep.t_hat,
            "omega": rep.omega,
            "mho": rep.mho,
            "max_abs_g": rep.max_abs_g,
            "branch": rep.branch.value,
        }
    else:
        if args.n < 2:
            raise DomainInvalid(f"grid needs --n >= 2, got {args.n}")
        us = np.linspace(0.0, p.L, args.n)
        with open(args.out, "w", newline="") as fh:
            fh.write("t,s,G\n")
            for ui in us:
                g_row = _green_xy(p, np.full(args.n, ui), us)
                t = p.t1 * math.exp(ui)
                for uj, g in zip(us, g_row):
                    s = p.t1 * math.exp(uj)
                    fh.write(f"{_fmt_real(t)},{_fmt_real(s)},{_fmt_real(g)}\n")
        payload = {"path": args.out, "rows": args.n * args.n}
    return RunReport("green", _params_dict(p), payload, [], __version__)


def cmd_eigen(args) -> RunReport:
    p = _params_from(args)
    result = min_eigenvalue_modulus(p, args.n)
    payload = {
        "n": result.n,
        "dominant_mu": result.dominant_mu,
        "lambda_min": result.lambda_min,
        "analytic_bound": result.analytic_bound,
        "satisfied": result.satisfied,
        "eigenvector_boundary_residual": result.eigenvector_boundary_residual,
    }
    return RunReport("eigen", _params_dict(p), payload, [], __version__)


def cmd_selftest(args) -> RunReport:
    results = run_selftests(name_filter=args.filter, seed=args.seed)
    payload = {
        "total": len(results),
        "passed": sum(1 for r in results if r["ok"]),
        "failed": sum(1 for r in results if not r["ok"]),
        "checks": results,
    }
    return RunReport("selftest", None, payload, [], __version__)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--tol", type=_real, default=1e-9, help="quadrature tolerance")
    common.add_argument("--seed", type=int, default=20260815, help="seed for randomized checks")

    pp = argparse.ArgumentParser(add_help=False)
    pp.add_argument("--sigma", type=_real, required=True, help="leading order, 1 < sigma <= 2")
    pp.add_argument("--kappa", type=_real, required=True, help="inner order, 0 < kappa < sigma-1")
    pp.add_argument("--t1", type=_real, required=True, help="left endpoint, t1 > 0")
    pp.add_argument("--t2", type=_real, required=True, help="right endpoint, t2 > t1")

    top = argparse.ArgumentParser(
        prog="hbvp",
        description=(
            "Green's function maxima, Lyapunov-type integral bounds, and "
            "nonexistence verdicts for Hadamard fractional boundary value "
            "problems with two derivative orders."
        ),
    )
    sub = top.add_subparsers(dest="command", required=True)

    sub.add_parser("bound", parents=[common, pp], help="closed-form bound report")

    p_check = sub.add_parser("check", parents=[common, pp], help="nonexistence verdict for q")
    grp = p_check.add_mutually_exclusive_group(required=True)
    grp.add_argument("--q-const", type=_real, help="constant coefficient value")
    grp.add_argument("--q-expr", help="coefficient expression in t, e.g. 'ln(t)'")
    grp.add_argument("--q-table", help="CSV file with header 't,q'")

    p_green = sub.add_parser("green", help="Green's function values and maxima")
    gsub = p_green.add_subparsers(dest="green_cmd", required=True)
    g_eval = gsub.add_parser("eval", parents=[common, pp], help="G(t, s) at a point")
    g_eval.add_argument("--t", type=_real, required=True)
    g_eval.add_argument("--s", type=_real, required=True)
    gsub.add_parser("max", parents=[common, pp], help="closed-form maximum report")
    g_grid = gsub.add_parser("grid", parents=[common, pp], help="CSV grid of G values")
    g_grid.add_argument("--n", type=int, default=100, help="grid points per axis")
    g_grid.add_argument("--out", required=True, help="output CSV path")

    p_eigen = sub.add_parser("eigen", parents=[common, pp], help="Nystrom eigenvalue check")
    p_eigen.add_argument("--n", type=int, default=400, help="mesh size (>= 32)")

    p_self = sub.add_parser("selftest", parents=[common], help="run embedded checks")
    p_self.add_argument("--filter", help="only run checks whose name contains this")

    return top


_DISPATCH = {
    "bound": cmd_bound,
    "check": cmd_check,
    "green": cmd_green,
    "eigen": cmd_eigen,
    "selftest": cmd_selftest,
}


# Errors mapped to the numerical-failure exit code; every other package
# error (validation, parsing, resource caps) maps to the usage code.
_NUMERICAL_EXC = (QuadratureFailure, ConvergenceFailure, DifferenceInstability, EvalError)
_USAGE_EXC = (
    DomainInvalid,
    ResourceLimit,
    ExpressionSyntaxError,
    UnknownIdentifier,
    HadamardBVPError,
    OSError,
)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        report = _DISPATCH[args.command](args)
    except _NUMERICAL_EXC as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _NUMERICAL_ERROR
    except _USAGE_EXC as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR

    exit_code = 0
    if report.command == "selftest":
        if not args.json:
            for check in report.payload["checks"]:
                status = "PASS" if check["ok"] else "FAIL"
                print(f"{status}  {check['name']}  ({check['detail']})")
        if report.payload["failed"]:
            exit_code = 1
    if report.command == "eigen" and not report.payload["satisfied"]:
        exit_code = _BOUND_VIOLATION

    print(_render(report, args.json))
    return exit_code
