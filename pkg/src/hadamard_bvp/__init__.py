"""Green's function analysis and Lyapunov-type bounds for Hadamard
fractional boundary value problems with two derivative orders.

The library computes the closed-form maximum of the Green's function, the
resulting integral bound on the coefficient, eigenvalue thresholds, and
nonexistence verdicts, and cross-validates the closed forms numerically
(quadrature operators, brute-force maximization, and a Nystrom eigenvalue
estimate of the equivalent integral equation).
"""

from .bounds import (
    LyapunovReport,
    eigenvalue_bound,
    integrate_abs_q,
    lambda_nonexistence_check,
    lyapunov_bound,
    lyapunov_report,
    nonexistence_check,
    reference_bound_kappa0,
)
from .coefficient import (
    Coefficient,
    Constant,
    Expression,
    Table,
    eval_coefficient,
    load_table,
    parse_expr,
    pretty,
)
from .errors import (
    BoundaryOrderUnsupported,
    ConvergenceFailure,
    DifferenceInstability,
    DomainInvalid,
    EvalError,
    ExpressionSyntaxError,
    HadamardBVPError,
    OrderOutOfRange,
    OutOfTableRange,
    QuadratureFailure,
    ResourceLimit,
    UnknownIdentifier,
    ZeroLambda,
)
from .fredholm import NystromResult, min_eigenvalue_modulus, nystrom_matrix, residual_check
from .gammafn import gamma, reciprocal_gamma
from .kernel import (
    GreenMaxReport,
    MaxBranch,
    critical_x2,
    diag_h,
    discriminant,
    green_eval,
    green_max,
    green_max_bruteforce,
    mho,
    omega,
    t_hat,
    t_star,
    xi1,
    xi2,
    zeta,
)
from .operators import (
    DEFAULT_CONFIG,
    OperatorKind,
    QuadratureConfig,
    composition_check,
    hadamard_derivative,
    hadamard_integral,
    power_rule_reference,
)
from .params import FracParams, Verdict, VerdictKind, validate

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # parameters and verdicts
    "FracParams", "Verdict", "VerdictKind", "validate",
    # special functions
    "gamma", "reciprocal_gamma",
    # kernel
    "GreenMaxReport", "MaxBranch", "xi1", "xi2", "green_eval", "diag_h",
    "zeta", "discriminant", "critical_x2", "t_star", "t_hat", "omega",
    "mho", "green_max", "green_max_bruteforce",
    # bounds
    "LyapunovReport", "lyapunov_bound", "eigenvalue_bound", "lyapunov_report",
    "nonexistence_check", "lambda_nonexistence_check", "integrate_abs_q",
    "reference_bound_kappa0",
    # operators
    "QuadratureConfig", "DEFAULT_CONFIG", "OperatorKind", "hadamard_integral",
    "hadamard_derivative", "power_rule_reference", "composition_check",
    # coefficients
    "Coefficient", "Constant", "Expression", "Table", "parse_expr", "pretty",
    "eval_coefficient", "load_table",
    # fredholm
    "NystromResult", "nystrom_matrix", "min_eigenvalue_modulus", "residual_check",
    # errors
    "HadamardBVPError", "DomainInvalid", "OrderOutOfRange",
    "BoundaryOrderUnsupported", "ResourceLimit", "QuadratureFailure",
    "DifferenceInstability", "ConvergenceFailure", "ZeroLambda", "EvalError",
    "OutOfTableRange", "UnknownIdentifier", "ExpressionSyntaxError",
]
