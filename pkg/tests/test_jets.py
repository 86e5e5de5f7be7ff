"""Jet arithmetic: truncated Taylor expansions and matrix routines."""

import numpy as np
import pytest

from grastar.errors import ConvergenceError, RangeError
from grastar.jets import (
    Jet,
    JetRing,
    MatrixJet,
    extract_partial,
    mat_inv_sqrt,
    mat_inverse,
)


def test_ring_axioms_random():
    ring = JetRing(3, 4)
    rng = np.random.default_rng(0)
    a, b, c = (
        Jet(ring, rng.standard_normal(ring.size) + 1j * rng.standard_normal(ring.size))
        for _ in range(3)
    )
    assert np.allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs)
    assert np.allclose((a * b).coeffs, (b * a).coeffs)
    assert np.allclose((a * (b + c)).coeffs, (a * b + a * c).coeffs)
    one = ring.const(1.0)
    assert np.allclose((a * one).coeffs, a.coeffs)


def test_partials_of_polynomial():
    # f(x, y) = x^2 y + x^2 at (2, 0.5)
    ring = JetRing(2, 3)
    x = ring.var(0, 2.0)
    y = ring.var(1, 0.5)
    f = x * x * y + x * x
    assert abs(extract_partial(f, (2, 0)) - (2 * 0.5 + 2)) < 1e-14
    assert abs(extract_partial(f, (1, 1)) - 2 * 2) < 1e-14
    assert abs(extract_partial(f, (2, 1)) - 2) < 1e-14
    assert abs(f.value() - (4 * 0.5 + 4)) < 1e-14


def test_partials_match_finite_differences():
    # a rational composite function, differentiated two ways
    def func(x, y):
        return (x * x + 3 * y) / (1.0 + x * y)

    x0, y0 = 0.7, -0.3
    ring = JetRing(2, 2)
    x = ring.var(0, x0)
    y = ring.var(1, y0)
    denom = MatrixJet(ring, [[ring.const(1.0) + x * y]])
    inv = mat_inverse(denom).data[0][0]
    f = (x * x + 3 * y) * inv
    h = 1e-5
    fd_x = (func(x0 + h, y0) - func(x0 - h, y0)) / (2 * h)
    fd_xy = (
        func(x0 + h, y0 + h)
        - func(x0 + h, y0 - h)
        - func(x0 - h, y0 + h)
        + func(x0 - h, y0 - h)
    ) / (4 * h * h)
    assert abs(extract_partial(f, (1, 0)) - fd_x) < 1e-8
    assert abs(extract_partial(f, (1, 1)) - fd_xy) < 1e-5


def test_binomial_series():
    # (4 + eps)^(-1/2) around eps = 0
    ring = JetRing(1, 3)
    M = MatrixJet(ring, [[ring.var(0, 4.0)]])
    R = mat_inv_sqrt(M).data[0][0]
    expect = [0.5, -0.0625, 0.01171875, -0.00244140625]
    for k, e in enumerate(expect):
        assert abs(R.coeffs[ring.index_of((k,))] - e) < 1e-13


def test_mat_inverse_residual():
    rng = np.random.default_rng(3)
    ring = JetRing(4, 3)
    base = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) + 3 * np.eye(3)
    M = MatrixJet.from_numeric(ring, base)
    for k in range(4):
        M.data[k % 3][(k + 1) % 3] = M.data[k % 3][(k + 1) % 3] + ring.var(k)
    X = M @ mat_inverse(M)
    I = MatrixJet.identity(ring, 3)
    assert max(
        np.max(np.abs(a.coeffs - b.coeffs))
        for ra, rb in zip(X.data, I.data)
        for a, b in zip(ra, rb)
    ) < 1e-12


def test_mat_inv_sqrt_residual():
    rng = np.random.default_rng(4)
    ring = JetRing(3, 3)
    A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    base = A @ A.conj().T + 2 * np.eye(2)
    M = MatrixJet.from_numeric(ring, base)
    for k in range(3):
        M.data[k % 2][k % 2] = M.data[k % 2][k % 2] + ring.var(k, 0.0) * 0.3
    R = mat_inv_sqrt(M)
    X = R @ M @ R
    I = MatrixJet.identity(ring, 2)
    assert max(
        np.max(np.abs(a.coeffs - b.coeffs))
        for ra, rb in zip(X.data, I.data)
        for a, b in zip(ra, rb)
    ) < 1e-11


def test_mat_inv_sqrt_rejects_indefinite():
    ring = JetRing(1, 2)
    M = MatrixJet.from_numeric(ring, np.diag([1.0, -1.0]))
    with pytest.raises(ConvergenceError):
        mat_inv_sqrt(M)


def test_mat_inverse_rejects_singular():
    ring = JetRing(1, 2)
    M = MatrixJet.from_numeric(ring, np.zeros((2, 2)))
    with pytest.raises(ConvergenceError):
        mat_inverse(M)


def test_group_degree_caps():
    ring = JetRing(4, 4, caps=((0, 2, 2), (2, 4, 2)))
    # all monomials obey both group caps
    assert np.all(ring.monos[:, :2].sum(axis=1) <= 2)
    assert np.all(ring.monos[:, 2:].sum(axis=1) <= 2)
    assert ring.size == 36  # 6 choices per group of two variables up to degree 2


def test_embedding_preserves_coefficients():
    small = JetRing(2, 2)
    big = JetRing(4, 4, caps=((0, 2, 2), (2, 4, 2)))
    j = small.var(0, 1.5) * small.var(1, -0.5)
    for offset in (0, 2):
        e = j.embed(big, offset)
        md = [0, 0, 0, 0]
        md[offset] = 1
        md[offset + 1] = 1
        assert abs(e.coeffs[big.index_of(tuple(md))] - 1.0) < 1e-15
        assert abs(e.value() - j.value()) < 1e-15


def test_sparse_and_table_paths_agree():
    ring_a = JetRing(3, 3)
    ring_b = JetRing(3, 3).warm()
    rng = np.random.default_rng(5)
    c1 = np.zeros(ring_a.size, dtype=complex)
    c2 = np.zeros(ring_a.size, dtype=complex)
    c1[rng.choice(ring_a.size, 4, replace=False)] = rng.standard_normal(4)
    c2[rng.choice(ring_a.size, 4, replace=False)] = rng.standard_normal(4)
    assert np.allclose(ring_a.multiply(c1, c2), ring_b.multiply(c1, c2))


def test_var_out_of_range():
    ring = JetRing(2, 2)
    with pytest.raises(RangeError):
        ring.var(2)
