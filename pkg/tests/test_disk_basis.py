import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import disk_points
from diskball.disk_basis import (
    build_disk_coeffs,
    dim,
    disk_basis_direct,
    disk_recurrence,
    disk_recurrence_matrices,
    eval_disk_basis,
    eval_disk_basis_grad,
    eval_disk_basis_grad_many,
    eval_disk_basis_many,
    index,
)
from diskball.quadrature import disk_rule

SP = math.sqrt(math.pi)


def closed_forms(x, y):
    """Degrees 0-3, written out by hand."""
    return np.array([
        1 / SP,
        2 * x / SP, 2 * y / SP,
        (4 * x**2 - 1) / SP, math.sqrt(24 / math.pi) * x * y,
        math.sqrt(2 / math.pi) * (3 * y**2 + x**2 - 1),
        4 / SP * x * (2 * x**2 - 1), 4 / math.sqrt(5 * math.pi) * y * (6 * x**2 - 1),
        4 / SP * x * (3 * y**2 + x**2 - 1), 4 / math.sqrt(5 * math.pi) * y * (5 * y**2 - 3 + 3 * x**2),
    ])


@pytest.fixture(scope="module")
def table():
    return build_disk_coeffs(14)


def test_coefficient_examples():
    t = build_disk_coeffs(6)
    assert t.a[0][0] == pytest.approx(0.5, abs=1e-16)
    assert t.d[0][0] == pytest.approx(0.5, abs=1e-16)
    assert all(t.c[n][0] == 0.0 for n in range(6))


def test_coefficient_signs():
    t = build_disk_coeffs(30)
    for n in range(30):
        assert len(t.a[n]) == len(t.c[n]) == len(t.d[n]) == n + 1
        assert all(v > 0 for v in t.a[n])
        assert all(v > 0 for v in t.d[n])
        assert all(v <= 0 for v in t.c[n])


def test_empty_table():
    t = build_disk_coeffs(0)
    assert eval_disk_basis(t, (0.1, 0.2), 0).values[0] == pytest.approx(1 / SP)
    with pytest.raises(ValueError):
        build_disk_coeffs(-1)


def test_index():
    assert index(0, 0) == 0
    assert index(1, 1) == 2
    assert index(3, 2) == 8
    with pytest.raises(ValueError):
        index(2, 3)
    n = 9
    seen = sorted(index(m, k) for m in range(n + 1) for k in range(m + 1))
    assert seen == list(range(dim(n)))


def test_eval_examples(table):
    v = eval_disk_basis(table, (0.5, -0.2), 0)
    assert_allclose(v.values, [0.5641895835477563], rtol=1e-15)
    v = eval_disk_basis(table, (0.3, 0.4), 2)
    assert len(v.values) == 6
    assert v[1, 0] == pytest.approx(0.3385137501286538, abs=1e-15)
    assert v[1, 1] == pytest.approx(0.4513516668382051, abs=1e-15)
    assert v[2, 2] == pytest.approx(math.sqrt(2 / math.pi) * (3 * 0.16 + 0.09 - 1), abs=1e-15)
    assert v[2, 2] == pytest.approx(-0.3430904, abs=1e-7)


def test_eval_rejects(table):
    with pytest.raises(ValueError):
        eval_disk_basis(table, (0.8, 0.7), 3)
    with pytest.raises(ValueError):
        eval_disk_basis(table, (0.1, 0.1), 15)
    with pytest.raises(ValueError):
        eval_disk_basis(table, (float("nan"), 0.1), 3)
    # boundary and the tolerance band are accepted
    eval_disk_basis(table, (1.0, 0.0), 3)
    eval_disk_basis(table, (0.6, 0.8 + 1e-13), 3)


def test_closed_forms(table, rng):
    pts = disk_points(rng, 1000)
    for x, y in pts:
        v = eval_disk_basis(table, (x, y), 3).values
        assert_allclose(v, closed_forms(x, y), rtol=0, atol=1e-13)


def test_direct_examples():
    assert disk_basis_direct(0, 0, (0.9, 0.1)) == pytest.approx(1 / SP, rel=1e-15)
    assert disk_basis_direct(2, 2, (0.3, 0.4)) == pytest.approx(-0.3430904, abs=1e-7)
    assert disk_basis_direct(1, 1, (1.0, 0.0)) == 0.0
    with pytest.raises(ValueError):
        disk_basis_direct(1, 0, (float("inf"), 0.0))


@pytest.mark.parametrize("x", [1.0, -1.0])
def test_direct_boundary_limit_matches_recurrence(table, x):
    v = eval_disk_basis(table, (x, 0.0), 8)
    for m in range(9):
        for k in range(m + 1):
            assert disk_basis_direct(m, k, (x, 0.0)) == pytest.approx(v[m, k], abs=1e-11)


def test_recurrence_matches_direct(table, rng):
    pts = disk_points(rng, 200, radius=0.999)
    for x, y in pts:
        v = eval_disk_basis(table, (x, y), 12).values
        for m in range(13):
            for k in range(m + 1):
                d = disk_basis_direct(m, k, (x, y))
                assert abs(v[index(m, k)] - d) <= 1e-11 * max(1.0, abs(d))


def test_parity(table, rng):
    pts = disk_points(rng, 50)
    V = eval_disk_basis_many(table, pts, 10)
    Vy = eval_disk_basis_many(table, pts * [1, -1], 10)
    Vx = eval_disk_basis_many(table, pts * [-1, 1], 10)
    for m in range(11):
        for k in range(m + 1):
            i = index(m, k)
            assert_allclose(Vy[i], (-1) ** k * V[i], atol=1e-12)
            assert_allclose(Vx[i], (-1) ** (m - k) * V[i], atol=1e-12)


def test_many_matches_single(table, rng):
    pts = disk_points(rng, 7)
    V = eval_disk_basis_many(table, pts, 9)
    assert V.shape == (dim(9), 7)
    for i, p in enumerate(pts):
        assert_allclose(V[:, i], eval_disk_basis(table, p, 9).values, rtol=0, atol=1e-15)


def test_gradient_examples(table):
    bv = eval_disk_basis_grad(table, (0.3, 0.4), 3)
    assert bv.grad_x[0] == 0.0 and bv.grad_y[0] == 0.0
    assert bv.grad_x[index(1, 0)] == pytest.approx(2 / SP, rel=1e-15)
    assert bv.grad_y[index(1, 0)] == 0.0
    assert bv.grad_y[index(1, 1)] == pytest.approx(2 / SP, rel=1e-15)
    assert bv.grad_x[index(2, 1)] == pytest.approx(math.sqrt(24 / math.pi) * 0.4, rel=1e-14)
    assert bv.grad_x[index(2, 1)] == pytest.approx(1.1055813, abs=1e-7)
    assert_allclose(bv.values, eval_disk_basis(table, (0.3, 0.4), 3).values, rtol=0, atol=1e-15)


def test_gradient_finite_differences(table, rng):
    # h^2 f'''/6 truncation of the h=1e-5 stencil passes 1e-6 only within 0.1 of the rim
    pts = disk_points(rng, 100, radius=0.9)
    h = 1e-5
    _, gx, gy = eval_disk_basis_grad_many(table, pts, 10)
    fdx = (eval_disk_basis_many(table, pts + [h, 0], 10)
           - eval_disk_basis_many(table, pts - [h, 0], 10)) / (2 * h)
    fdy = (eval_disk_basis_many(table, pts + [0, h], 10)
           - eval_disk_basis_many(table, pts - [0, h], 10)) / (2 * h)
    assert np.max(np.abs(gx - fdx)) <= 1e-6
    assert np.max(np.abs(gy - fdy)) <= 1e-6


def test_gradient_complex_step(table, rng):
    # complex-step derivatives of the polynomial recurrence are exact to rounding,
    # rim included
    pts = np.vstack([disk_points(rng, 200), [[1, 0], [-1, 0], [0, 1], [0.6, -0.8]]])
    x, y = pts[:, 0], pts[:, 1]
    h = 1e-30
    n = 14
    _, gx, gy = eval_disk_basis_grad_many(table, pts, n)
    cx = np.imag(np.asarray(disk_recurrence(table, x + 1j * h, y + 0j, n))) / h
    cy = np.imag(np.asarray(disk_recurrence(table, x + 0j, y + 1j * h, n))) / h
    scale = np.maximum(1.0, np.abs(cx) + np.abs(cy))
    assert np.max(np.abs(gx - cx) / scale) <= 1e-12
    assert np.max(np.abs(gy - cy) / scale) <= 1e-12


def _direct_block(m, pts):
    return np.array([[disk_basis_direct(m, k, p) for p in pts] for k in range(m + 1)])


@pytest.mark.parametrize("n", range(0, 6))
def test_recurrence_matrices_by_quadrature(table, n):
    rule = disk_rule(n + 3)
    w = rule.weights
    Pn = _direct_block(n, rule.points)
    Pn1 = _direct_block(n + 1, rule.points)
    A1, A2 = disk_recurrence_matrices(table, n)
    for coord, A in zip(rule.coords(), (A1, A2)):
        assert_allclose((Pn * coord * w) @ Pn1.T, A, rtol=0, atol=1e-11)
        assert_allclose((Pn * coord * w) @ Pn.T, 0.0, rtol=0, atol=1e-11)


def test_recurrence_matrix_sparsity(table):
    A1, A2 = disk_recurrence_matrices(table, 5)
    assert np.count_nonzero(A1) == 6
    assert np.count_nonzero(A2) == 6 + 5
    assert np.all(A1[:, -1] == 0)
