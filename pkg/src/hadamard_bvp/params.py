"""Problem parameters and verdict types.

The boundary value problem is posed on [t1, t2] with a leading Hadamard
derivative of order sigma in (1, 2] and an inner derivative of order kappa
in (0, sigma - 1).  The open upper end for kappa is essential: at
kappa = sigma - 1 the kernel exponent sigma - kappa - 1 hits zero and the
maximum formulas lose their meaning, so that case is rejected outright
rather than approximated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import BoundaryOrderUnsupported, DomainInvalid, OrderOutOfRange

__all__ = ["FracParams", "Verdict", "VerdictKind", "validate"]


@dataclass(frozen=True)
class FracParams:
    """Validated parameter bundle; construct via :func:`validate`."""

    sigma: float
    kappa: float
    t1: float
    t2: float

    @property
    def L(self) -> float:
        """Width of the domain in logarithmic coordinates, ln(t2/t1)."""
        return math.log(self.t2 / self.t1)


class VerdictKind(enum.Enum):
    NoNontrivialSolution = "NoNontrivialSolution"
    Inconclusive = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a nonexistence test.

    ``kind`` is ``NoNontrivialSolution`` exactly when ``q_integral < bound``
    (strict); equality is reported as ``Inconclusive`` because the underlying
    inequality is not strict at the threshold.
    """

    kind: VerdictKind
    bound: float
    q_integral: float

    @staticmethod
    def from_comparison(bound: float, q_integral: float) -> "Verdict":
        if q_integral < bound:
            kind = VerdictKind.NoNontrivialSolution
        else:
            kind = VerdictKind.Inconclusive
        return Verdict(kind=kind, bound=bound, q_integral=q_integral)


def validate(sigma: float, kappa: float, t1: float, t2: float) -> FracParams:
    """Check all parameter invariants and return a frozen bundle.

    Comparisons are exact in floating point; no epsilon slack is applied
    anywhere, so e.g. sigma = 2.0 is accepted while kappa = sigma - 1 is
    rejected even when the difference is one ulp.
    """
    for name, value in (("sigma", sigma), ("kappa", kappa), ("t1", t1), ("t2", t2)):
        if not math.isfinite(value):
            raise DomainInvalid(f"{name} must be finite, got {value!r}")
    if not 1.0 < sigma <= 2.0:
        raise OrderOutOfRange(f"sigma must satisfy 1 < sigma <= 2, got {sigma!r}")
    if kappa == sigma - 1.0:
        raise BoundaryOrderUnsupported(
            f"kappa = sigma - 1 = {kappa!r} is excluded: the kernel exponent "
            "sigma - kappa - 1 vanishes there"
        )
    if not 0.0 < kappa < sigma - 1.0:
        raise OrderOutOfRange(
            f"kappa must satisfy 0 < kappa < sigma - 1 = {sigma - 1.0!r}, got {kappa!r}"
        )
    if not 0.0 < t1 < t2:
        raise DomainInvalid(f"need 0 < t1 < t2, got t1={t1!r}, t2={t2!r}")
    return FracParams(sigma=sigma, kappa=kappa, t1=t1, t2=t2)
