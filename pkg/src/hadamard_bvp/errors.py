"""Exception types shared across the package."""

from __future__ import annotations


class HadamardBVPError(Exception):
    """Base class for all errors raised by this package."""


class DomainInvalid(HadamardBVPError):
    """An argument lies outside the mathematical domain of an operation."""


class OrderOutOfRange(DomainInvalid):
    """A fractional order violates 1 < sigma <= 2 or 0 < kappa < sigma - 1."""


class BoundaryOrderUnsupported(DomainInvalid):
    """kappa equals sigma - 1 exactly; the kernel formulas degenerate there."""


class ResourceLimit(HadamardBVPError):
    """A requested grid or matrix size exceeds the configured cap."""


class QuadratureFailure(HadamardBVPError):
    """Numerical integration could not reach the requested tolerance."""


class DifferenceInstability(HadamardBVPError):
    """Finite-difference differentiation is dominated by noise at this point."""


class ConvergenceFailure(HadamardBVPError):
    """An iterative eigenvalue computation failed to settle within budget."""


class ZeroLambda(DomainInvalid):
    """The eigenvalue candidate is zero, for which the test is vacuous."""


class EvalError(HadamardBVPError):
    """A coefficient could not be evaluated (log of non-positive, 1/0, ...)."""


class OutOfTableRange(EvalError):
    """A table coefficient was queried outside its knot range."""


class UnknownIdentifier(HadamardBVPError):
    """An expression references a name that is neither `t` nor a function."""

    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class ExpressionSyntaxError(SyntaxError, HadamardBVPError):
    """Malformed coefficient expression.

    Carries the byte offset of the failure and the set of token kinds that
    would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...]):
        detail = f"{message} at offset {offset}"
        if expected:
            detail += " (expected: " + ", ".join(sorted(expected)) + ")"
        super().__init__(detail)
        self.offset = offset
        self.expected = tuple(sorted(expected))
