"""Green's function for the two-order Hadamard boundary value problem.

Everything here lives naturally in logarithmic coordinates
``x = ln(t/t1)``, ``y = ln(s/t1)``, ``L = ln(t2/t1)``.  With
``a = sigma - 1`` and ``b = sigma - kappa - 1`` the kernel is

    G(t, s) = (1/Gamma(sigma - kappa)) * Xi(t, s),
    Xi1(t, s) = x^a (L - y)^b / (L^a s)              for t <= s,
    Xi2(t, s) = Xi1(t, s) - (x - y)^b / s            for s <= t.

``Xi1`` is nonnegative; ``Xi2`` changes sign, and the absolute maximum of G
over the square is attained either on the diagonal t = s (at ``t_star``) or
on the left edge s = t1 (at ``t_hat``).  Both candidates have closed forms:

* the diagonal profile ``h(t) = x^a (L - x)^b / t`` is maximised at
  ``x2``, the smaller root of ``x^2 - (L + 2a - kappa) x + a L = 0``;
  ``omega = h(t_star) / L^a`` is the diagonal candidate;
* the left-edge profile ``zeta(t) = x^b (1 - (x/L)^kappa) / t1`` is
  maximised at ``x = (b/a)^(1/kappa) L``; ``mho = zeta(t_hat)`` is the edge
  candidate (the kernel is negative there, so ``zeta = |Xi2(t, t1)|``).

``green_max`` reports ``max|G| = max(omega, mho) / Gamma(sigma - kappa)``
together with the branch that wins; ``green_max_bruteforce`` recomputes the
maximum by direct search so the closed forms are testable against an
independent route.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainInvalid, ResourceLimit
from .gammafn import gamma
from .params import FracParams

__all__ = [
    "GreenMaxReport",
    "MaxBranch",
    "xi1",
    "xi2",
    "green_eval",
    "diag_h",
    "zeta",
    "discriminant",
    "critical_x2",
    "t_star",
    "t_hat",
    "omega",
    "mho",
    "green_max",
    "green_max_bruteforce",
]

# Largest accepted grid size for the brute-force search; a block sweep over
# an n x n grid touches n^2 kernel values, so this caps work at ~17M points.
BRUTEFORCE_MAX_N = 4096

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class MaxBranch(enum.Enum):
    Diagonal = "Diagonal"
    LeftEdge = "LeftEdge"


@dataclass(frozen=True)
class GreenMaxReport:
    """Closed-form maximum analysis of |G| over [t1, t2]^2.

    ``max_abs_g = max(omega, mho) / gamma(sigma - kappa)``; ``branch`` names
    the winning candidate, with ties resolved to ``Diagonal``.
    """

    delta: float
    x2: float
    t_star: float
    t_hat: float
    omega: float
    mho: float
    max_abs_g: float
    branch: MaxBranch


def _log_coord(p: FracParams, t: float, name: str) -> float:
    if not (p.t1 <= t <= p.t2):
        raise DomainInvalid(f"{name}={t!r} outside [{p.t1!r}, {p.t2!r}]")
    # Clamp away one-ulp excursions from the log; the t-space check above is
    # the authoritative one.
    return min(max(math.log(t / p.t1), 0.0), p.L)


def xi1(p: FracParams, t: float, s: float) -> float:
    """Upper-triangle kernel branch, valid for t1 <= t <= s <= t2."""
    if not (p.t1 <= t <= s <= p.t2):
        raise DomainInvalid(f"xi1 needs t1 <= t <= s <= t2, got t={t!r}, s={s!r}")
    x = _log_coord(p, t, "t")
    y = _log_coord(p, s, "s")
    a = p.sigma - 1.0
    b = p.sigma - p.kappa - 1.0
    return x**a * max(p.L - y, 0.0) ** b / (p.L**a * s)


def xi2(p: FracParams, t: float, s: float) -> float:
    """Lower-triangle kernel branch, valid for t1 <= s <= t <= t2."""
    if not (p.t1 <= s <= t <= p.t2):
        raise DomainInvalid(f"xi2 needs t1 <= s <= t <= t2, got t={t!r}, s={s!r}")
    x = _log_coord(p, t, "t")
    y = _log_coord(p, s, "s")
    a = p.sigma - 1.0
    b = p.sigma - p.kappa - 1.0
    upper = x**a * max(p.L - y, 0.0) ** b / p.L**a
    return (upper - max(x - y, 0.0) ** b) / s


def green_eval(p: FracParams, t: float, s: float) -> float:
    """G(t, s) on the closed square [t1, t2]^2 (signed value)."""
    if not (p.t1 <= t <= p.t2 and p.t1 <= s <= p.t2):
        raise DomainInvalid(f"(t, s)=({t!r}, {s!r}) outside [{p.t1!r}, {p.t2!r}]^2")
    branch = xi1(p, t, s) if t <= s else xi2(p, t, s)
    return branch / gamma(p.sigma - p.kappa)


def diag_h(p: FracParams, t: float) -> float:
    """Diagonal profile h(t) = x^a (L - x)^b / t for t in [t1, t2]."""
    x = _log_coord(p, t, "t")
    a = p.sigma - 1.0
    b = p.sigma - p.kappa - 1.0
    return x**a * max(p.L - x, 0.0) ** b / t


def zeta(p: FracParams, t: float) -> float:
    """Left-edge profile |Xi2(t, t1)| = x^b (1 - (x/L)^kappa) / t1."""
    x = _log_coord(p, t, "t")
    b = p.sigma - p.kappa - 1.0
    return x**b * (1.0 - (x / p.L) ** p.kappa) / p.t1


def discriminant(p: FracParams) -> float:
    """Discriminant of the diagonal stationarity quadratic (always > 0)."""
    bc = p.L + 2.0 * (p.sigma - 1.0) - p.kappa
    return bc * bc - 4.0 * (p.sigma - 1.0) * p.L


def critical_x2(p: FracParams) -> float:
    """Smaller root of x^2 - (L + 2(sigma-1) - kappa) x + (sigma-1) L = 0.

    Computed through the larger root and the Vieta product to avoid the
    subtractive cancellation of the textbook formula when the discriminant
    is close to the squared linear coefficient (small L).
    """
    a = p.sigma - 1.0
    bc = p.L + 2.0 * a - p.kappa
    x1 = 0.5 * (bc + math.sqrt(discriminant(p)))
    assert x1 > p.L, "larger stationarity root must fall beyond the domain"
    x2 = a * p.L / x1
    assert 0.0 < x2 < p.L
    return x2


def t_star(p: FracParams) -> float:
    """Location of the diagonal maximum, t1 * exp(x2)."""
    return p.t1 * math.exp(critical_x2(p))


def t_hat(p: FracParams) -> float:
    """Location of the left-edge maximum, t1 * exp((b/a)^(1/kappa) L)."""
    ratio = (p.sigma - p.kappa - 1.0) / (p.sigma - 1.0)
    return p.t1 * math.exp(ratio ** (1.0 / p.kappa) * p.L)


def omega(p: FracParams) -> float:
    """Diagonal candidate for the unscaled maximum, h(t_star) / L^(sigma-1)."""
    a = p.sigma - 1.0
    b = p.sigma - p.kappa - 1.0
    x2 = critical_x2(p)
    return x2**a * (p.L - x2) ** b / (p.L**a * p.t1 * math.exp(x2))


def mho(p: FracParams) -> float:
    """Left-edge candidate for the unscaled maximum, zeta(t_hat).

    Evaluated in closed form: with r = kappa/(sigma-1),
    mho = r * (1 - r)^(b/kappa) * L^b / t1.
    """
    b = p.sigma - p.kappa - 1.0
    r = p.kappa / (p.sigma - 1.0)
    return r * (1.0 - r) ** (b / p.kappa) * p.L**b / p.t1


def green_max(p: FracParams) -> GreenMaxReport:
    """Closed-form maximum of |G| with its full derivation trail."""
    om = omega(p)
    mh = mho(p)
    branch = MaxBranch.Diagonal if om >= mh else MaxBranch.LeftEdge
    return GreenMaxReport(
        delta=discriminant(p),
        x2=critical_x2(p),
        t_star=t_star(p),
        t_hat=t_hat(p),
        omega=om,
        mho=mh,
        max_abs_g=max(om, mh) / gamma(p.sigma - p.kappa),
        branch=branch,
    )


def _green_xy(p: FracParams, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorised G on log-coordinate arrays (broadcasting, signed)."""
    a = p.sigma - 1.0
    b = p.sigma - p.kappa - 1.0
    s = p.t1 * np.exp(y)
    upper = np.power(x, a) * np.power(np.maximum(p.L - y, 0.0), b) / p.L**a
    lower = np.power(np.maximum(x - y, 0.0), b)
    return (upper - lower) / (s * gamma(p.sigma - p.kappa))


def _golden_line_max(f, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
    """Golden-section maximisation of a unimodal-ish section; returns (c, f(c))."""
    c1 = hi - _GOLDEN * (hi - lo)
    c2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(c1), f(c2)
    for _ in range(iters):
        if f1 < f2:
            lo, c1, f1 = c1, c2, f2
            c2 = lo + _GOLDEN * (hi - lo)
            f2 = f(c2)
        else:
            hi, c2, f2 = c2, c1, f1
            c1 = hi - _GOLDEN * (hi - lo)
            f1 = f(c1)
    return (c1, f1) if f1 >= f2 else (c2, f2)


def green_max_bruteforce(
    p: FracParams, n: int, block: int = 256
) -> tuple[float, tuple[float, float]]:
    """Grid search for max|G| over the square, refined by line searches.

    The grid is uniform in log coordinates.  After the sweep the best cell is
    polished with golden-section searches along the axis directions and both
    diagonals of the grid (the ridge of |G| runs along t = s, where pure
    coordinate descent stalls), repeated until the directions are exhausted.

    Returns ``(value, (t, s))``.  Raises ResourceLimit for n above
    ``BRUTEFORCE_MAX_N`` and DomainInvalid for n < 16.
    """
    if n < 16:
        raise DomainInvalid(f"bruteforce grid needs n >= 16, got {n}")
    if n > BRUTEFORCE_MAX_N:
        raise ResourceLimit(f"bruteforce grid n={n} exceeds cap {BRUTEFORCE_MAX_N}")

    xs = np.linspace(0.0, p.L, n)
    best_val = -1.0
    best_ix = best_iy = 0
    for row0 in range(0, n, block):
        rows = xs[row0 : row0 + block]
        vals = np.abs(_green_xy(p, rows[:, None], xs[None, :]))
        flat = int(np.argmax(vals))
        i, j = divmod(flat, n)
        if vals[i, j] > best_val:
            best_val = float(vals[i, j])
            best_ix, best_iy = row0 + i, j

    x0, y0 = float(xs[best_ix]), float(xs[best_iy])
    h = p.L / (n - 1)
    directions = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0))
    for _ in range(6):
        for dx, dy in directions:
            def section(c: float) -> float:
                xx = min(max(x0 + c * dx, 0.0), p.L)
                yy = min(max(y0 + c * dy, 0.0), p.L)
                return abs(float(_green_xy(p, np.asarray(xx), np.asarray(yy))))

            c_best, v_best = _golden_line_max(section, -2.0 * h, 2.0 * h)
            if v_best > best_val:
                best_val = v_best
                x0 = min(max(x0 + c_best * dx, 0.0), p.L)
                y0 = min(max(y0 + c_best * dy, 0.0), p.L)
        h *= 0.25

    return best_val, (p.t1 * math.exp(x0), p.t1 * math.exp(y0))
