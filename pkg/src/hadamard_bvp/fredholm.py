"""Nystrom discretization of the equivalent integral equation.

The boundary value problem is equivalent to x = integral of G(t,s) q(s) x(s)
ds, so the matrix K[i][j] = w_j G(t_i, s_j) q(s_j) discretizes the integral
operator.  With q = 1 the reciprocal of the spectral radius of K estimates
the smallest eigenvalue modulus of the associated eigenproblem, which the
analytic bound must stay below.

The dominant eigenvalue of K is a complex-conjugate pair for much of the
parameter range (the eigenfunctions are Mittag-Leffler-type with complex
zeros), so a single power iteration does not converge.  A two-column
subspace iteration handles both the real and the conjugate-pair case and
returns the spectral radius; agreement between K and its transpose is used
as a convergence cross-check.

Boundary structure: the node set contains t1 and t2 explicitly with zero
quadrature weight.  G(t1, .) = 0 and G(., t2) contributes nothing, so row 0
and the last column of K vanish identically and every iterate of the
subspace satisfies the boundary conditions exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import eigenvalue_bound
from .coefficient import Coefficient, Constant, eval_coefficient
from .errors import ConvergenceFailure, DomainInvalid, ResourceLimit
from .kernel import _green_xy
from .params import FracParams

__all__ = ["NystromResult", "nystrom_matrix", "min_eigenvalue_modulus", "residual_check"]

MATRIX_MAX_N = 4000

_PANEL_ORDER = 4


@dataclass(frozen=True)
class NystromResult:
    """Spectral summary of the q = 1 Nystrom matrix.

    ``dominant_mu`` is the spectral radius (modulus of the dominant
    eigenvalue or conjugate pair); ``lambda_min = 1/dominant_mu`` estimates
    the smallest eigenvalue modulus of the continuous problem.
    """

    n: int
    dominant_mu: float
    lambda_min: float
    analytic_bound: float
    satisfied: bool
    eigenvector_boundary_residual: float


def _nodes_weights(p: FracParams, n: int) -> tuple[np.ndarray, np.ndarray]:
    """n log-space nodes on [t1, t2] with s-space quadrature weights.

    Interior nodes form composite Gauss-Legendre panels (order 4, uniform
    in u = ln(t/t1)); the endpoints are appended with zero weight so the
    boundary rows/columns are represented explicitly.
    """
    interior = n - 2
    panels, rem = divmod(interior, _PANEL_ORDER)
    edges = np.linspace(0.0, p.L, panels + (1 if rem else 0) + 1)
    us = []
    wus = []
    for i in range(len(edges) - 1):
        order = _PANEL_ORDER if i < panels else rem
        xg, wg = np.polynomial.legendre.leggauss(order)
        half = 0.5 * (edges[i + 1] - edges[i])
        us.append(0.5 * (edges[i] + edges[i + 1]) + half * xg)
        wus.append(half * wg)
    u = np.concatenate([[0.0], *us, [p.L]])
    wu = np.concatenate([[0.0], *wus, [0.0]])
    s = p.t1 * np.exp(u)
    # ds = s du, so s-space weights absorb the Jacobian.
    return s, wu * s


def nystrom_matrix(p: FracParams, q: Coefficient, n: int) -> np.ndarray:
    """K[i][j] = w_j * G(t_i, s_j) * q(s_j) on the log-uniform node set."""
    if not (isinstance(n, int) and n >= 8):
        raise DomainInvalid(f"nystrom matrix needs integer n >= 8, got {n!r}")
    if n > MATRIX_MAX_N:
        raise ResourceLimit(f"nystrom matrix n={n} exceeds cap {MATRIX_MAX_N}")
    s, w = _nodes_weights(p, n)
    qvals = np.array([eval_coefficient(q, float(t)) for t in s])
    u = np.log(s / p.t1)
    g = _green_xy(p, u[:, None], u[None, :])
    return g * (w * qvals)[None, :]


def _subspace_radius(K: np.ndarray, tol: float, budget: int) -> tuple[float, np.ndarray]:
    """Spectral radius via 2-column orthogonal iteration; returns (rho, basis)."""
    n = K.shape[0]
    V = np.stack([np.ones(n), np.linspace(-1.0, 1.0, n)], axis=1)
    V, _ = np.linalg.qr(V)
    rho_prev = -1.0
    for _ in range(budget):
        W = K @ V
        norm = np.linalg.norm(W)
        if norm == 0.0:
            return 0.0, V
        V, _ = np.linalg.qr(W)
        H = V.T @ (K @ V)
        rho = float(np.max(np.abs(np.linalg.eigvals(H))))
        if abs(rho - rho_prev) <= tol * max(rho, 1e-300):
            return rho, V
        rho_prev = rho
    raise ConvergenceFailure(
        f"subspace iteration did not settle within {budget} steps "
        f"(last change {abs(rho - rho_prev):.3e})"
    )


def min_eigenvalue_modulus(p: FracParams, n: int) -> NystromResult:
    """Estimate the smallest eigenvalue modulus of the q = 1 problem.

    Runs the subspace iteration on K and on K^T and requires agreement,
    since the two share a spectrum but different iteration dynamics.
    """
    if not (isinstance(n, int) and n >= 32):
        raise DomainInvalid(f"eigenvalue estimate needs integer n >= 32, got {n!r}")
    K = nystrom_matrix(p, Constant(1.0), n)
    rho, V = _subspace_radius(K, tol=1e-12, budget=10_000)
    rho_t, _ = _subspace_radius(K.T, tol=1e-12, budget=10_000)
    if rho <= 0.0:
        raise ConvergenceFailure("spectral radius estimate collapsed to zero")
    if abs(rho - rho_t) > 1e-8 * rho:
        raise ConvergenceFailure(
            f"K vs K^T spectral radius mismatch: {rho!r} vs {rho_t!r}"
        )
    v = V[:, 0]
    residual = max(abs(float(v[0])), abs(float(v[-1]))) / float(np.max(np.abs(v)))
    lambda_min = 1.0 / rho
    bound = eigenvalue_bound(p)
    return NystromResult(
        n=n,
        dominant_mu=rho,
        lambda_min=lambda_min,
        analytic_bound=bound,
        satisfied=lambda_min >= bound,
        eigenvector_boundary_residual=residual,
    )


def residual_check(
    p: FracParams, q: Coefficient, x_samples, n: int
) -> float:
    """Sup-norm residual of x - Kx at the nodes for a candidate solution x.

    ``x_samples`` is a sequence of (t, value) pairs covering [t1, t2];
    values are interpolated linearly in ln t onto the Nystrom nodes.
    """
    pairs = sorted((float(t), float(v)) for t, v in x_samples)
    if not pairs:
        raise DomainInvalid("x_samples must be non-empty")
    ts = np.array([t for t, _ in pairs])
    vs = np.array([v for _, v in pairs])
    if ts[0] > p.t1 or ts[-1] < p.t2:
        raise DomainInvalid(
            f"samples cover [{ts[0]!r}, {ts[-1]!r}], need [{p.t1!r}, {p.t2!r}]"
        )
    K = nystrom_matrix(p, q, n)
    s, _ = _nodes_weights(p, n)
    x = np.interp(np.log(s), np.log(ts), vs)
    return float(np.max(np.abs(x - K @ x)))
