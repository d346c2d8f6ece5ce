"""Orthonormal polynomial basis of the unit disk.

The basis {Q_m^k : 0 <= k <= m <= n} is built from Gegenbauer products and
evaluated through its sparse three-term recurrence: each degree block costs
O(m) operations given the two previous blocks. Values are stored flat,
degree by degree, with ``index(m, k) = m (m + 1) / 2 + k``.

The recurrence code only uses ``+ - * /`` on the point coordinates, so the
same routines serve Python floats, numpy arrays (many points at once) and
instrumented scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .univariate import gegenbauer_eval

INV_SQRT_PI = 1.0 / math.sqrt(math.pi)
TWO_INV_SQRT_PI = 2.0 / math.sqrt(math.pi)
OUTSIDE_TOL = 1e-12


def dim(n: int) -> int:
    """Dimension of the polynomials of total degree <= n in two variables."""
    return (n + 1) * (n + 2) // 2


def index(m: int, k: int) -> int:
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    return m * (m + 1) // 2 + k


@dataclass(frozen=True)
class DiskRecurrenceTable:
    """Recurrence coefficients a_{k,n}, c_{k,n}, d_{k,n} for 0 <= k <= n < max_degree.

    ``a[n][k]`` etc. are plain tuples of floats.
    """

    max_degree: int
    a: tuple[tuple[float, ...], ...]
    c: tuple[tuple[float, ...], ...]
    d: tuple[tuple[float, ...], ...]


def build_disk_coeffs(max_degree: int) -> DiskRecurrenceTable:
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    a, c, d = [], [], []
    for n in range(max_degree):
        nn = (n + 1) * (n + 2)
        a.append(tuple(0.5 * math.sqrt((n - k + 1) * (n + k + 2) / nn)
                       for k in range(n + 1)))
        d.append(tuple(0.5 * (k + 1) * math.sqrt((n + k + 3) * (n + k + 2)
                                                 / ((2 * k + 1) * (2 * k + 3) * nn))
                       for k in range(n + 1)))
        c.append((0.0,) + tuple(-0.5 * k * math.sqrt((n - k + 1) * (n - k + 2)
                                                     / (nn * (2 * k - 1) * (2 * k + 1)))
                                for k in range(1, n + 1)))
    return DiskRecurrenceTable(max_degree, tuple(a), tuple(c), tuple(d))


@dataclass(frozen=True)
class DiskBasisValues:
    degree: int
    values: np.ndarray
    grad_x: np.ndarray | None = None
    grad_y: np.ndarray | None = None

    def __getitem__(self, mk):
        return self.values[index(*mk)]


def _const_like(value, x):
    if isinstance(x, np.ndarray):
        return np.full(x.shape, value)
    return value


def _check(table, x, y, n):
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > table.max_degree:
        raise ValueError(f"degree {n} exceeds table max_degree {table.max_degree}")
    xf = np.asarray(x, dtype=float)
    yf = np.asarray(y, dtype=float)
    if not (np.all(np.isfinite(xf)) and np.all(np.isfinite(yf))):
        raise ValueError("non-finite point")
    if np.any(xf * xf + yf * yf > 1.0 + OUTSIDE_TOL):
        raise ValueError("point lies outside the closed unit disk")


def disk_recurrence(table: DiskRecurrenceTable, x, y, n: int) -> list:
    """Flat list of Q_m^k(x, y), m <= n, no input checks."""
    Q = [_const_like(INV_SQRT_PI, x)]
    if n == 0:
        return Q
    Q.append(TWO_INV_SQRT_PI * x)
    Q.append(TWO_INV_SQRT_PI * y)
    a, c, d = table.a, table.c, table.d
    for m in range(1, n):
        cur = m * (m + 1) // 2
        prev = (m - 1) * m // 2
        am, am1 = a[m], a[m - 1]
        new = [(x * Q[cur + i] - am1[i] * Q[prev + i]) / am[i] for i in range(m)]
        new.append(x * Q[cur + m] / am[m])
        new.append((y * Q[cur + m] - c[m][m] * new[m - 1]
                    - d[m - 1][m - 1] * Q[prev + m - 1]) / d[m][m])
        Q.extend(new)
    return Q


def disk_recurrence_grad(table: DiskRecurrenceTable, x, y, n: int):
    """Values and both partial derivatives as three flat lists."""
    zero = _const_like(0.0, x)
    Q = [_const_like(INV_SQRT_PI, x)]
    Qx = [zero]
    Qy = [zero]
    if n == 0:
        return Q, Qx, Qy
    g = _const_like(TWO_INV_SQRT_PI, x)
    Q += [TWO_INV_SQRT_PI * x, TWO_INV_SQRT_PI * y]
    Qx += [g, zero]
    Qy += [zero, g]
    a, c, d = table.a, table.c, table.d
    for m in range(1, n):
        cur = m * (m + 1) // 2
        prev = (m - 1) * m // 2
        am, am1 = a[m], a[m - 1]
        for i in range(m):
            r = 1.0 / am[i]
            Q.append((x * Q[cur + i] - am1[i] * Q[prev + i]) * r)
            Qx.append((Q[cur + i] + x * Qx[cur + i] - am1[i] * Qx[prev + i]) * r)
            Qy.append((x * Qy[cur + i] - am1[i] * Qy[prev + i]) * r)
        r = 1.0 / am[m]
        Q.append(x * Q[cur + m] * r)
        Qx.append((Q[cur + m] + x * Qx[cur + m]) * r)
        Qy.append(x * Qy[cur + m] * r)
        # Q_{m+1}^{m-1} sits two slots from the end
        below = len(Q) - 2
        cm, dm1, r = c[m][m], d[m - 1][m - 1], 1.0 / d[m][m]
        Q.append((y * Q[cur + m] - cm * Q[below] - dm1 * Q[prev + m - 1]) * r)
        Qx.append((y * Qx[cur + m] - cm * Qx[below] - dm1 * Qx[prev + m - 1]) * r)
        Qy.append((Q[cur + m] + y * Qy[cur + m] - cm * Qy[below]
                   - dm1 * Qy[prev + m - 1]) * r)
    return Q, Qx, Qy


def _as_array(vals):
    if isinstance(vals[-1], (float, int, np.floating, np.ndarray)):
        return np.asarray(vals, dtype=float)
    return np.asarray(vals, dtype=object)


def eval_disk_basis(table: DiskRecurrenceTable, point, n: int) -> DiskBasisValues:
    """All basis values of degree <= n at one point of the closed disk."""
    x, y = point
    _check(table, x, y, n)
    return DiskBasisValues(n, _as_array(disk_recurrence(table, x, y, n)))


def eval_disk_basis_grad(table: DiskRecurrenceTable, point, n: int) -> DiskBasisValues:
    x, y = point
    _check(table, x, y, n)
    Q, Qx, Qy = disk_recurrence_grad(table, x, y, n)
    return DiskBasisValues(n, _as_array(Q), _as_array(Qx), _as_array(Qy))


def eval_disk_basis_many(table: DiskRecurrenceTable, points, n: int) -> np.ndarray:
    """Basis matrix of shape (dim(n), npoints) for an (npoints, 2) array."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    x, y = pts[:, 0].copy(), pts[:, 1].copy()
    _check(table, x, y, n)
    return np.asarray(disk_recurrence(table, x, y, n))


def eval_disk_basis_grad_many(table: DiskRecurrenceTable, points, n: int):
    """Values, d/dx and d/dy, each of shape (dim(n), npoints)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    x, y = pts[:, 0].copy(), pts[:, 1].copy()
    _check(table, x, y, n)
    return tuple(np.asarray(v) for v in disk_recurrence_grad(table, x, y, n))


def disk_norm_sq(m: int, k: int) -> float:
    """h_{k,m}^2, via log-factorials."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    lg = math.lgamma
    return math.exp(math.log(math.pi) - k * math.log(4.0) + lg(m + k + 2)
                    - math.log(m + 1) - math.log(2 * k + 1)
                    - 2.0 * lg(k + 1) - lg(m - k + 1))


def disk_basis_direct(m: int, k: int, point) -> float:
    """Q_m^k from the Gegenbauer product formula (independent of the recurrence)."""
    x, y = (float(v) for v in point)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("non-finite point")
    if x * x + y * y > 1.0 + OUTSIDE_TOL:
        raise ValueError("point lies outside the closed unit disk")
    h = math.sqrt(disk_norm_sq(m, k))
    s2 = 1.0 - x * x
    if s2 <= 0.0:
        # limit at (+-1, 0)
        angular = 1.0 if k == 0 else 0.0
    else:
        s = math.sqrt(s2)
        t = min(1.0, max(-1.0, y / s))
        angular = s**k * gegenbauer_eval(0.5, k, t)
    return gegenbauer_eval(k + 1.0, m - k, x) * angular / h


def disk_recurrence_matrices(table: DiskRecurrenceTable, n: int):
    """Dense A_{n,1}, A_{n,2} of shape (n+1, n+2) assembled from the table."""
    if not 0 <= n < table.max_degree:
        raise ValueError(f"need 0 <= n < {table.max_degree}")
    A1 = np.zeros((n + 1, n + 2))
    A2 = np.zeros((n + 1, n + 2))
    for k in range(n + 1):
        A1[k, k] = table.a[n][k]
        A2[k, k + 1] = table.d[n][k]
        if k > 0:
            A2[k, k - 1] = table.c[n][k]
    return A1, A2
