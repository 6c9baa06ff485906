import math

import pytest

from hadamard_bvp import (
    BoundaryOrderUnsupported,
    DomainInvalid,
    OrderOutOfRange,
    Verdict,
    VerdictKind,
    validate,
)


def test_validate_accepts_reference_parameters():
    p = validate(1.75, 0.5, 1.0, math.e)
    assert p.sigma == 1.75 and p.kappa == 0.5
    assert p.t1 == 1.0 and p.t2 == math.e
    assert abs(p.L - 1.0) < 1e-15


def test_validate_accepts_sigma_equal_two():
    p = validate(2.0, 0.5, 0.5, 3.0)
    assert p.sigma == 2.0


def test_sigma_out_of_range():
    for sigma in (0.5, 1.0, 2.0000000000000004, 3.0, -1.0):
        with pytest.raises(OrderOutOfRange):
            validate(sigma, 0.25, 1.0, 2.0)


def test_kappa_out_of_range():
    for kappa in (0.0, -0.3, 0.9, 1.5):
        with pytest.raises(OrderOutOfRange):
            validate(1.75, kappa, 1.0, 2.0)


def test_kappa_at_boundary_rejected_exactly():
    # kappa = sigma - 1 is excluded with no epsilon slack: one ulp below passes.
    sigma = 1.75
    edge = sigma - 1.0
    with pytest.raises(BoundaryOrderUnsupported):
        validate(sigma, edge, 1.0, 2.0)
    p = validate(sigma, math.nextafter(edge, 0.0), 1.0, 2.0)
    assert p.kappa < edge


def test_domain_rejections():
    for t1, t2 in ((0.0, 2.0), (-1.0, 2.0), (2.0, 2.0), (3.0, 2.0)):
        with pytest.raises(DomainInvalid):
            validate(1.75, 0.5, t1, t2)
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(DomainInvalid):
            validate(1.75, 0.5, 1.0, bad)


def test_verdict_factory_strictness():
    v = Verdict.from_comparison(bound=2.0, q_integral=1.0)
    assert v.kind is VerdictKind.NoNontrivialSolution
    assert v.bound == 2.0 and v.q_integral == 1.0
    # Equality is not a strict violation, so it stays inconclusive.
    assert Verdict.from_comparison(2.0, 2.0).kind is VerdictKind.Inconclusive
    assert Verdict.from_comparison(2.0, 2.5).kind is VerdictKind.Inconclusive


def test_verdict_soundness_bitwise():
    for bound, integral in ((1.0, 0.9999999999999999), (1.0, 1.0000000000000002), (3.5, 3.5)):
        v = Verdict.from_comparison(bound, integral)
        assert (v.kind is VerdictKind.NoNontrivialSolution) == (v.q_integral < v.bound)
