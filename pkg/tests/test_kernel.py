"""Green's function kernel: closed forms against independent references.

The frozen numbers were produced by a 50-digit evaluation of the closed
forms; the brute-force comparisons are an independent route through direct
grid search.
"""

import math

import numpy as np
import pytest

from hadamard_bvp import (
    DomainInvalid,
    MaxBranch,
    ResourceLimit,
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
    validate,
    xi1,
    xi2,
    zeta,
)

EX_A = validate(1.75, 0.5, 1.0, math.e)
EX_B = validate(1.5, 0.25, 1.0, math.e)

# 50-digit reference values for EX_A / EX_B.
A_REF = {
    "delta": 1.0,
    "x2": 0.5,
    "t_star": 1.6487212707001281,
    "omega": 0.30326532985631671,
    "t_hat": 1.1175190687418636,
    "mho": 0.38490017945975051,
    "max_abs_g": 0.42464599248463041,
    "diag_value": 0.33458131187096824,  # G(sqrt(e), sqrt(e))
}
B_REF = {
    "delta": 1.0625,
    "x2": 0.35961179679779243,
    "t_star": 1.4327730994804238,
    "omega": 0.37441253213886333,
    "t_hat": 1.0644944589178594,
    "mho": 0.25,
    "max_abs_g": 0.41307536289527054,
}


def _random_params(rng):
    sigma = rng.uniform(1.05, 2.0)
    kappa = rng.uniform(0.1, 0.9) * (sigma - 1.0)
    t1 = rng.uniform(0.5, 2.0)
    t2 = t1 * math.exp(rng.uniform(0.3, 1.5))
    return validate(sigma, kappa, t1, t2)


def test_reference_set_a():
    rep = green_max(EX_A)
    assert abs(rep.delta - A_REF["delta"]) <= 1e-12
    assert abs(rep.x2 - A_REF["x2"]) <= 1e-12
    assert abs(rep.t_star - A_REF["t_star"]) <= 1e-12
    assert abs(rep.t_hat - A_REF["t_hat"]) <= 1e-12
    assert abs(rep.omega - A_REF["omega"]) <= 1e-12
    assert abs(rep.mho - A_REF["mho"]) <= 1e-12
    assert abs(rep.max_abs_g - A_REF["max_abs_g"]) <= 1e-12
    assert rep.branch is MaxBranch.LeftEdge


def test_reference_set_b():
    rep = green_max(EX_B)
    assert abs(rep.delta - B_REF["delta"]) <= 1e-12
    assert abs(rep.x2 - B_REF["x2"]) <= 1e-12
    assert abs(rep.t_star - B_REF["t_star"]) <= 1e-12
    assert abs(rep.t_hat - B_REF["t_hat"]) <= 1e-12
    assert abs(rep.omega - B_REF["omega"]) <= 1e-12
    assert rep.mho == B_REF["mho"]  # closed form is exactly 1/4 here
    assert abs(rep.max_abs_g - B_REF["max_abs_g"]) <= 1e-12
    assert rep.branch is MaxBranch.Diagonal


def test_green_point_values():
    r = math.sqrt(math.e)
    assert abs(green_eval(EX_A, r, r) - A_REF["diag_value"]) <= 1e-12
    # Boundary zeros: G(t1, s) = 0 and G(t, t2) = 0.
    for s in (1.0, 1.5, math.e):
        assert green_eval(EX_A, 1.0, s) == 0.0
    for t in (1.0, 2.0, math.e):
        assert green_eval(EX_A, t, math.e) == 0.0
    assert xi2(EX_A, math.e, 1.0) == 0.0


def test_xi2_left_edge_matches_zeta():
    th = t_hat(EX_A)
    assert abs(xi2(EX_A, th, 1.0) + A_REF["mho"]) <= 1e-12
    assert abs(zeta(EX_A, th) - mho(EX_A)) <= 1e-12


def test_domain_errors():
    with pytest.raises(DomainInvalid):
        green_eval(EX_A, 0.5, 1.5)
    with pytest.raises(DomainInvalid):
        green_eval(EX_A, 1.5, 3.5)
    with pytest.raises(DomainInvalid):
        xi1(EX_A, 2.0, 1.5)  # needs t <= s
    with pytest.raises(DomainInvalid):
        xi2(EX_A, 1.5, 2.0)  # needs s <= t


def test_discriminant_two_forms_agree():
    rng = np.random.default_rng(11)
    for _ in range(20):
        p = _random_params(rng)
        a = p.sigma - 1.0
        form1 = discriminant(p)
        form2 = (p.L - p.kappa) ** 2 + 4.0 * a * a - 4.0 * a * p.kappa
        assert abs(form1 - form2) <= 1e-12 * max(abs(form1), 1.0)
        assert form1 > 0.0


def test_critical_root_location():
    rng = np.random.default_rng(12)
    for _ in range(20):
        p = _random_params(rng)
        x2 = critical_x2(p)
        assert 0.0 < x2 < p.L
        # Vieta: both root identities hold to near machine precision.
        bc = p.L + 2.0 * (p.sigma - 1.0) - p.kappa
        x1 = (p.sigma - 1.0) * p.L / x2
        assert abs(x1 + x2 - bc) <= 1e-12 * bc
        assert x1 > p.L


def test_stationarity_of_t_star_and_t_hat():
    # Centred differences in x = ln t vanish at the analytic maximisers.
    for p in (EX_A, EX_B):
        delta = 1e-5 * p.L
        xs = math.log(t_star(p) / p.t1)
        slope = (
            diag_h(p, p.t1 * math.exp(xs + delta))
            - diag_h(p, p.t1 * math.exp(xs - delta))
        ) / (2.0 * delta)
        assert abs(slope) <= 1e-6 * diag_h(p, t_star(p)) / p.L
        xh = math.log(t_hat(p) / p.t1)
        slope_h = (
            zeta(p, p.t1 * math.exp(xh + delta))
            - zeta(p, p.t1 * math.exp(xh - delta))
        ) / (2.0 * delta)
        assert abs(slope_h) <= 1e-6 * zeta(p, t_hat(p))


def test_omega_mho_consistency_with_profiles():
    for p in (EX_A, EX_B):
        assert abs(omega(p) - diag_h(p, t_star(p)) / p.L ** (p.sigma - 1.0)) <= 1e-14
        assert abs(mho(p) - zeta(p, t_hat(p))) <= 1e-14


def test_diagonal_continuity_and_sign_structure():
    rng = np.random.default_rng(13)
    for _ in range(20):
        p = _random_params(rng)
        for frac in rng.uniform(0.001, 0.999, 50):
            t = p.t1 * math.exp(p.L * frac)
            assert abs(xi1(p, t, t) - xi2(p, t, t)) <= 1e-12
            assert xi1(p, t, t) >= 0.0
            assert xi2(p, t, p.t1) <= 0.0


def test_monotonicity_in_s():
    rng = np.random.default_rng(14)
    for _ in range(20):
        p = _random_params(rng)
        frac = rng.uniform(0.05, 0.95)
        t = p.t1 * math.exp(p.L * frac)
        up = np.sort(p.t1 * np.exp(p.L * rng.uniform(frac, 1.0, 25)))
        vals = [xi1(p, t, s) for s in up]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
        down = np.sort(p.t1 * np.exp(p.L * rng.uniform(0.0, frac, 25)))
        vals2 = [xi2(p, t, s) for s in down]
        assert all(b >= a - 1e-12 for a, b in zip(vals2, vals2[1:]))


def test_bruteforce_matches_closed_form():
    rng = np.random.default_rng(15)
    for _ in range(10):
        p = _random_params(rng)
        closed = green_max(p).max_abs_g
        brute, (t_at, s_at) = green_max_bruteforce(p, 400)
        assert abs(brute - closed) <= 2e-3 * closed
        # The argmax lives on the diagonal or on the left edge s = t1.
        x = math.log(t_at / p.t1)
        y = math.log(s_at / p.t1)
        cell = 4.0 * p.L / 399
        assert min(abs(x - y), y) <= cell


def test_bruteforce_stable_in_n():
    vals = [green_max_bruteforce(EX_B, n)[0] for n in (64, 128, 256)]
    for a, b in zip(vals, vals[1:]):
        assert abs(a - b) <= 1e-9 * max(vals)
    closed = green_max(EX_B).max_abs_g
    assert max(vals) <= closed * (1.0 + 1e-12)


def test_bruteforce_limits():
    with pytest.raises(DomainInvalid):
        green_max_bruteforce(EX_A, 8)
    with pytest.raises(ResourceLimit):
        green_max_bruteforce(EX_A, 100000)
