"""Lyapunov-type integral bound, eigenvalue threshold, nonexistence verdicts.

The necessary condition for a nontrivial solution is

    integral of |q| over [t1, t2]  >=  gamma(sigma - kappa) / max(omega, mho),

so whenever the left side is strictly smaller the problem admits only the
zero solution.  The eigenvalue variant multiplies the bound by (t2 - t1) and
compares against |lambda|.  Equality is always classified Inconclusive: the
necessary condition is non-strict, so only a strict violation of it proves
nonexistence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coefficient import Coefficient, as_callable
from .errors import DomainInvalid, OrderOutOfRange, QuadratureFailure, ZeroLambda
from .gammafn import gamma
from .kernel import mho, omega
from .params import FracParams, Verdict

__all__ = [
    "LyapunovReport",
    "lyapunov_bound",
    "eigenvalue_bound",
    "nonexistence_check",
    "lambda_nonexistence_check",
    "integrate_abs_q",
    "reference_bound_kappa0",
    "lyapunov_report",
]

DEFAULT_TOL = 1e-9

# Fixed 15-node Gauss-Legendre rule used on every adaptive panel.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


@dataclass(frozen=True)
class LyapunovReport:
    """Bound summary, optionally extended with a computed verdict."""

    gamma_sk: float
    bound: float
    eigen_bound: float
    q_integral: Optional[float] = None
    verdict: Optional[Verdict] = None


def lyapunov_bound(p: FracParams) -> float:
    """gamma(sigma - kappa) / max(omega, mho); the integral threshold."""
    return gamma(p.sigma - p.kappa) / max(omega(p), mho(p))


def eigenvalue_bound(p: FracParams) -> float:
    """lyapunov_bound(p) * (t2 - t1); the |lambda| threshold."""
    return lyapunov_bound(p) * (p.t2 - p.t1)


def lyapunov_report(
    p: FracParams,
    q_integral: Optional[float] = None,
    verdict: Optional[Verdict] = None,
) -> LyapunovReport:
    bound = lyapunov_bound(p)
    return LyapunovReport(
        gamma_sk=gamma(p.sigma - p.kappa),
        bound=bound,
        eigen_bound=bound * (p.t2 - p.t1),
        q_integral=q_integral,
        verdict=verdict,
    )


def nonexistence_check(p: FracParams, q: Coefficient, tol: float = DEFAULT_TOL) -> Verdict:
    """Compare the integral of |q| against the bound; strict comparison."""
    bound = lyapunov_bound(p)
    q_integral = integrate_abs_q(q, p.t1, p.t2, tol)
    return Verdict.from_comparison(bound, q_integral)


def lambda_nonexistence_check(p: FracParams, lam: float) -> Verdict:
    """Eigenvalue variant: NoNontrivialSolution iff |lambda| < eigen bound."""
    if not math.isfinite(lam):
        raise DomainInvalid(f"lambda must be finite, got {lam!r}")
    if lam == 0.0:
        raise ZeroLambda("lambda = 0 makes the eigenvalue test vacuous")
    return Verdict.from_comparison(eigenvalue_bound(p), abs(lam))


def _gauss_panel(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0.0
    for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
        total += weight * f(mid + half * node)
    return half * total


def _bisect_sign_change(f, a: float, b: float, fa: float, width: float) -> float:
    """Narrow a bracket with f(a)*f(b) < 0 down to `width` and return its midpoint."""
    while b - a > width:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fa < 0.0) != (fm < 0.0):
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def integrate_abs_q(q, t1: float, t2: float, tol: float = DEFAULT_TOL) -> float:
    """Adaptive estimate of the integral of |q| over [t1, t2].

    Sign changes of q are first bracketed on a scan grid and pinned down by
    bisection, so that each adaptive sub-problem integrates a smooth branch
    of |q|.  Each panel uses a fixed 15-node Gauss rule; a panel is accepted
    when splitting it changes the result by less than its share of the
    tolerance.  QuadratureFailure is raised when the recursion exhausts its
    budget, which in practice means q is too rough for the scan resolution.
    """
    if not (math.isfinite(t1) and math.isfinite(t2) and 0.0 < t1 < t2):
        raise DomainInvalid(f"need 0 < t1 < t2, got {t1!r}, {t2!r}")
    if not tol > 0.0:
        raise DomainInvalid(f"tolerance must be positive, got {tol!r}")
    qf = as_callable(q)

    def absq(t: float) -> float:
        value = qf(t)
        if not math.isfinite(value):
            raise QuadratureFailure(f"coefficient returned {value!r} at t={t!r}")
        return abs(value)

    # Locate kinks of |q| at sign changes of q on a fixed scan grid.
    scan = np.linspace(t1, t2, 257)
    scan_vals = [qf(t) for t in scan]
    breakpoints = [t1]
    for left, right, f_left, f_right in zip(scan, scan[1:], scan_vals, scan_vals[1:]):
        if not (math.isfinite(f_left) and math.isfinite(f_right)):
            raise QuadratureFailure("coefficient not finite on the scan grid")
        if f_left == 0.0:
            if left != t1:
                breakpoints.append(float(left))
        elif f_right != 0.0 and (f_left < 0.0) != (f_right < 0.0):
            breakpoints.append(
                _bisect_sign_change(qf, float(left), float(right), f_left, 1e-12 * (t2 - t1))
            )
    breakpoints.append(t2)

    budget = [200_000]  # panel evaluations, shared across segments

    def adapt(a: float, b: float, whole: float, tol_here: float, depth: int) -> float:
        mid = 0.5 * (a + b)
        left = _gauss_panel(absq, a, mid)
        right = _gauss_panel(absq, mid, b)
        budget[0] -= 2
        if budget[0] <= 0 or depth > 48:
            raise QuadratureFailure(
                f"adaptive quadrature budget exhausted on [{a!r}, {b!r}]"
            )
        if abs(left + right - whole) <= tol_here:
            return left + right
        return adapt(a, mid, left, 0.5 * tol_here, depth + 1) + adapt(
            mid, b, right, 0.5 * tol_here, depth + 1
        )

    total = 0.0
    for a, b in zip(breakpoints, breakpoints[1:]):
        if b <= a:
            continue
        share = tol * (b - a) / (t2 - t1)
        total += adapt(a, b, _gauss_panel(absq, a, b), max(share, 1e-300), 0)
    return float(total)


def reference_bound_kappa0(sigma: float, t1: float, t2: float) -> float:
    """Integral bound for the single-derivative problem (kappa absent).

    Serves as the kappa -> 0 consistency oracle: as kappa shrinks, mho
    vanishes and gamma(sigma - kappa)/omega approaches this value.  With
    rho = exp((2(sigma-1) + ln(t1 t2) - sqrt(4(sigma-1)^2 + L^2)) / 2),
    the bound is gamma(sigma) * rho * (ln(rho/t1) ln(t2/rho) / L)^(1-sigma).
    """
    if not (math.isfinite(sigma) and 1.0 < sigma <= 2.0):
        raise OrderOutOfRange(f"sigma must satisfy 1 < sigma <= 2, got {sigma!r}")
    if not (math.isfinite(t1) and math.isfinite(t2) and 0.0 < t1 < t2):
        raise DomainInvalid(f"need 0 < t1 < t2, got {t1!r}, {t2!r}")
    a = sigma - 1.0
    L = math.log(t2 / t1)
    rho = math.exp(0.5 * (2.0 * a + math.log(t1 * t2) - math.sqrt(4.0 * a * a + L * L)))
    return gamma(sigma) * rho * (math.log(rho / t1) * math.log(t2 / rho) / L) ** (1.0 - sigma)
