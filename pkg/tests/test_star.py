"""The reduced star product: coefficients, evaluation, identities."""

from fractions import Fraction

import numpy as np
import pytest

from grastar.center import LambdaSeries, c_power_element
from grastar.errors import PoleError
from grastar.geometry import (
    FunctionExpr,
    SpaceConfig,
    eval_function,
    level_representative,
    poisson_bracket,
    random_function_expr,
    sample_point,
    wick_product,
)
from grastar.partitions import Frame
from grastar.star import (
    associativity_residuals,
    coefficient_operator,
    derivative_tensor,
    proj_outer_power,
    proj_sandwich_power,
    proj_scalar_power,
    projective_star_eval,
    slot_coefficient_matrix,
    star_eval,
    t_value,
    tensor_power,
    unsandwich,
    verify_suite,
)
from grastar.tensor_action import rho_central


def test_t_value_matches_box_description():
    # frame [2,1]: boxes contribute c, c+1, c-1
    c = Fraction(5, 3)
    assert t_value(Frame((2, 1)), c) == c * (c + 1) * (c - 1)


def test_coefficient_operator_paths_agree():
    for r in range(1, 5):
        for c in (Fraction(13, 2), Fraction(-7, 2)):
            assert coefficient_operator(r, c) == coefficient_operator(
                r, c, method="classes"
            )


def test_coefficient_operator_pole():
    with pytest.raises(PoleError):
        coefficient_operator(2, Fraction(1))


def test_derivative_tensor_on_polynomial():
    # f = tr(B Pi) for p = 1: gradient against an explicit finite difference
    cfg = SpaceConfig(1, 1, Fraction(1))
    z = sample_point(cfg, 0)
    rng = np.random.default_rng(0)
    f = random_function_expr(cfg, rng)
    from grastar.geometry import holomorphic_jet_point

    ring, Z, Zbar = holomorphic_jet_point(z, 2)
    jf = eval_function(f, Z, Zbar)
    DF1 = derivative_tensor(jf, cfg.n, cfg.p, 1)
    h = 1e-6
    for A in range(cfg.n):
        dz = z.z.copy()
        dz[A, 0] += h
        plus = eval_function(f, dz, z.zbar)
        dz[A, 0] -= 2 * h
        minus = eval_function(f, dz, z.zbar)
        fd = (plus - minus) / (2 * h)
        assert abs(DF1[A, 0] - fd) < 1e-6


def test_unit_element():
    cfg = SpaceConfig(2, 2, Fraction(2))
    z = sample_point(cfg, 1)
    rng = np.random.default_rng(1)
    f = random_function_expr(cfg, rng)
    one = FunctionExpr.one()
    zeta = level_representative(z, cfg.mu)
    fz = eval_function(f, zeta)
    for left, right in ((one, f), (f, one)):
        s = star_eval(left, right, cfg, z, 3)
        assert abs(s.coeffs[0] - fz) < 1e-12
        assert all(abs(a) < 1e-12 for a in s.coeffs[1:])


def test_projective_closed_form_matches_engine():
    for q in (1, 2):
        cfg = SpaceConfig(1, q, Fraction(2))
        rng = np.random.default_rng(q)
        z = sample_point(cfg, 10 + q)
        f = random_function_expr(cfg, rng)
        g = random_function_expr(cfg, rng)
        a = star_eval(f, g, cfg, z, 4)
        b = projective_star_eval(f, g, cfg, z, 4)
        assert max(abs(x - y) for x, y in zip(a.coeffs, b.coeffs)) < 1e-11


def test_fixed_lambda_consistent_with_series():
    cfg = SpaceConfig(2, 1, Fraction(1))
    z = sample_point(cfg, 2)
    rng = np.random.default_rng(2)
    f = random_function_expr(cfg, rng)
    g = random_function_expr(cfg, rng)
    series = star_eval(f, g, cfg, z, 4)
    lam = Fraction(1, 100)
    fixed = star_eval(f, g, cfg, z, 4, lam=lam)
    resummed = sum(c * float(lam) ** k for k, c in enumerate(series.coeffs))
    assert abs(fixed - resummed) < 1e-9  # they differ by the lambda^5 tail


def test_fixed_lambda_pole():
    cfg = SpaceConfig(2, 1, Fraction(1))
    z = sample_point(cfg, 3)
    f = FunctionExpr.one()
    with pytest.raises(PoleError):
        # lambda = -mu gives c = p - 1 = 1, killing the [1,1] polynomial
        star_eval(f, f, cfg, z, 2, lam=Fraction(-1))


def test_first_order_is_wick_first_order():
    cfg = SpaceConfig(2, 2, Fraction(3))
    z = sample_point(cfg, 4)
    rng = np.random.default_rng(4)
    f = random_function_expr(cfg, rng)
    g = random_function_expr(cfg, rng)
    zeta = level_representative(z, cfg.mu)
    s = star_eval(f, g, cfg, z, 1)
    w = wick_product(f, g, zeta, 1)
    assert abs(s.coeffs[0] - w.coeffs[0]) < 1e-12
    assert abs(s.coeffs[1] - w.coeffs[1]) < 1e-11


def test_scalar_power_reduction():
    mu, lam = Fraction(3), Fraction(1, 2)
    # positive powers
    assert proj_scalar_power(2, mu, lam) == mu * (mu - lam)
    # negative powers satisfy the downward recursion
    for r in range(1, 7):
        assert (mu + lam * r) * proj_scalar_power(-r, mu, lam) == proj_scalar_power(
            -(r - 1), mu, lam
        )
    assert proj_scalar_power(-1, mu, lam) == 1 / (mu + lam)
    assert proj_scalar_power(0, mu, lam) == 1


def test_sandwich_power_recursion_identity():
    mu, lam = Fraction(2), Fraction(1, 3)
    for (p, q) in ((1, 1), (2, 1), (2, 2)):
        cfg = SpaceConfig(p, q, mu)
        zeta = level_representative(sample_point(cfg, 5), mu).z
        n = p + q
        c = mu / lam + p
        for r in (1, 2, 3):
            PS = proj_sandwich_power(zeta, mu, lam, r)
            big = rho_central(c_power_element(r, c), n).to_complex().entries
            T = tensor_power(zeta @ zeta.conj().T / float(mu), r)
            assert np.max(np.abs(float(lam) ** r * big @ PS - T)) < 1e-12


def test_sandwich_round_trip_recovers_central_operator():
    mu, lam = Fraction(2), Fraction(1, 3)
    for (p, q) in ((1, 2), (2, 2)):
        cfg = SpaceConfig(p, q, mu)
        zeta = level_representative(sample_point(cfg, 6), mu).z
        c = mu / lam + p
        for r in (1, 2, 3):
            PS = proj_sandwich_power(zeta, mu, lam, r)
            rec = unsandwich(PS, zeta, mu, r) * (float(mu) * float(lam)) ** r
            U = rho_central(coefficient_operator(r, c), p).to_complex().entries
            assert np.max(np.abs(rec - U)) < 1e-10


def test_outer_power_projective_case():
    mu, lam = Fraction(3), Fraction(2, 5)
    cfg = SpaceConfig(1, 2, mu)
    zeta = level_representative(sample_point(cfg, 7), mu).z
    for r in (1, 2, 3):
        PO = proj_outer_power(zeta, mu, lam, r)
        scal = proj_scalar_power(r, mu, lam) / mu**r
        ref = float(scal) * tensor_power(zeta @ zeta.conj().T, r)
        assert np.max(np.abs(PO - ref)) < 1e-12


def test_slot_coefficient_matrix_inverts_c_powers():
    r, p = 3, 2
    c = Fraction(9, 2)
    U = slot_coefficient_matrix(r, p, c)
    big = rho_central(c_power_element(r, c), p).to_complex().entries
    assert np.max(np.abs(big @ U - np.eye(p**r))) < 1e-12


def test_associativity_small():
    cfg = SpaceConfig(2, 1, Fraction(2))
    z = sample_point(cfg, 8)
    rng = np.random.default_rng(8)
    f = random_function_expr(cfg, rng)
    g = random_function_expr(cfg, rng)
    h = random_function_expr(cfg, rng)
    res = associativity_residuals(f, g, h, cfg, z, 2)
    assert max(res) < 1e-10


def test_verify_suite_passes_and_serializes():
    import json

    cfg = SpaceConfig(1, 1, Fraction(2))
    report = verify_suite(cfg, order=2, seed=0)
    assert report["pass"]
    json.dumps(report)  # must be serializable
    # determinism
    report2 = verify_suite(cfg, order=2, seed=0)
    assert report == report2
