"""Orthonormal polynomial basis of the unit ball in R^3.

Degree-m block ordering: Q_m^{0,0..m}, Q_m^{1,0..m-1}, ..., Q_m^{m,0}.
Within a block, (j, k) sits at ``ball_index(m, j, k) = j (m + 1) - j (j - 1) / 2 + k``;
blocks are concatenated by ascending degree, block m starting at C(m + 2, 3).

A new degree block is obtained from the two previous ones in three phases:
the x-recurrence for all j + k <= m, then the y-recurrence for the top
entries (j + 1, m - j), then the z-recurrence for (0, m + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .disk_basis import OUTSIDE_TOL, _as_array, _const_like
from .univariate import gegenbauer_eval, log_gegenbauer_norm_sq

INV_SQRT_VOLUME = math.sqrt(3.0 / (4.0 * math.pi))
DEGREE_ONE = math.sqrt(15.0 / (4.0 * math.pi))


def ball_dim(n: int) -> int:
    """Dimension of the polynomials of total degree <= n in three variables."""
    return (n + 1) * (n + 2) * (n + 3) // 6


def block_size(n: int) -> int:
    return (n + 1) * (n + 2) // 2


def ball_index(n: int, j: int, k: int) -> int:
    """Offset of Q_n^{j,k} inside the degree-n block."""
    if j < 0 or k < 0 or j + k > n:
        raise ValueError(f"need j, k >= 0 and j + k <= n, got n={n}, j={j}, k={k}")
    return j * (n + 1) - j * (j - 1) // 2 + k


def ball_flat_index(n: int, j: int, k: int) -> int:
    """Position of Q_n^{j,k} in the flat vector of all degrees."""
    return n * (n + 1) * (n + 2) // 6 + ball_index(n, j, k)


def block_pairs(n: int):
    """The (j, k) pairs of the degree-n block, in storage order."""
    return [(j, k) for j in range(n + 1) for k in range(n + 1 - j)]


@dataclass(frozen=True)
class BallRecurrenceTable:
    """Recurrence coefficients for degrees n < max_degree.

    Each field is a tuple over n of tuples over the block (j, k) with j + k <= n,
    in ``ball_index`` order. Entries whose target index is out of range are 0.

    - ``x_jk``     coefficient of x Q_n^{j,k} on Q_{n+1}^{j,k}
    - ``y_jp1``    on Q_{n+1}^{j+1,k};  ``y_jm1`` on Q_{n+1}^{j-1,k}
    - ``z_km1``    on Q_{n+1}^{j,k-1};  ``z_jp2_km1`` on Q_{n+1}^{j+2,k-1}
    - ``z_kp1``    on Q_{n+1}^{j,k+1};  ``z_jm2_kp1`` on Q_{n+1}^{j-2,k+1}
    """

    max_degree: int
    x_jk: tuple
    y_jp1: tuple
    y_jm1: tuple
    z_km1: tuple
    z_jp2_km1: tuple
    z_kp1: tuple
    z_jm2_kp1: tuple


def _ball_coeff_block(n):
    x_jk, y_jp1, y_jm1 = [], [], []
    z_km1, z_jp2_km1, z_kp1, z_jm2_kp1 = [], [], [], []
    den_n = (n + 1.5) * (n + 2.5)
    for j, k in block_pairs(n):
        s = j + k
        x_jk.append(0.5 * math.sqrt((s + n + 3) * (n + 1 - s) / den_n))
        y_jp1.append(0.25 * math.sqrt((j + 2 * k + 2) * (j + 1) * (s + n + 4) * (s + n + 3)
                                      / ((s + 1) * (s + 2) * den_n)))
        y_jm1.append(0.0 if j == 0 else
                     -0.25 * math.sqrt(j * (j + 2 * k + 1) * (n + 2 - s) * (n + 1 - s)
                                       / ((s + 1) * s * den_n)))
        if k == 0:
            z_km1.append(0.0)
            z_jp2_km1.append(0.0)
        else:
            kk = (k + 0.5) * (k - 0.5)
            z_km1.append(-k / 8.0 * math.sqrt(
                (j + 2 * k + 1) * (j + 2 * k) * (n + 2 - s) * (n + 1 - s)
                / (kk * (s + 1) * s * den_n)))
            z_jp2_km1.append(-k / 8.0 * math.sqrt(
                (j + 2) * (j + 1) * (s + n + 4) * (s + n + 3)
                / (kk * (s + 1) * (s + 2) * den_n)))
        kk = (k + 0.5) * (k + 1.5)
        z_kp1.append((k + 1) / 8.0 * math.sqrt(
            (j + 2 * k + 3) * (j + 2 * k + 2) * (s + n + 4) * (s + n + 3)
            / (kk * (s + 1) * (s + 2) * den_n)))
        z_jm2_kp1.append(0.0 if j <= 1 else (k + 1) / 8.0 * math.sqrt(
            (n + 2 - s) * (n + 1 - s) * j * (j - 1) / (kk * s * (s + 1) * den_n)))
    return tuple(map(tuple, (x_jk, y_jp1, y_jm1, z_km1, z_jp2_km1, z_kp1, z_jm2_kp1)))


def build_ball_coeffs(max_degree: int) -> BallRecurrenceTable:
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    blocks = [_ball_coeff_block(n) for n in range(max_degree)]
    fields = tuple(tuple(b[i] for b in blocks) for i in range(7))
    return BallRecurrenceTable(max_degree, *fields)


@dataclass(frozen=True)
class BallBasisValues:
    degree: int
    values: np.ndarray
    grad_x: np.ndarray | None = None
    grad_y: np.ndarray | None = None
    grad_z: np.ndarray | None = None

    def __getitem__(self, njk):
        return self.values[ball_flat_index(*njk)]


def _check(table, x, y, z, n):
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > table.max_degree:
        raise ValueError(f"degree {n} exceeds table max_degree {table.max_degree}")
    xf, yf, zf = (np.asarray(v, dtype=float) for v in (x, y, z))
    if not all(np.all(np.isfinite(v)) for v in (xf, yf, zf)):
        raise ValueError("non-finite point")
    if np.any(xf * xf + yf * yf + zf * zf > 1.0 + OUTSIDE_TOL):
        raise ValueError("point lies outside the closed unit ball")


def _start(n):
    return n * (n + 1) * (n + 2) // 6


def ball_recurrence(table: BallRecurrenceTable, x, y, z, n: int) -> list:
    """Flat list of Q_m^{j,k}(x, y, z), m <= n, no input checks."""
    Q = [_const_like(INV_SQRT_VOLUME, x)]
    if n == 0:
        return Q
    # block order (0,0), (0,1), (1,0)
    Q += [DEGREE_ONE * x, DEGREE_ONE * z, DEGREE_ONE * y]
    for m in range(1, n):
        cur, prev = _start(m), _start(m - 1)
        ax, axm = table.x_jk[m], table.x_jk[m - 1]
        new = [None] * block_size(m + 1)
        pos = 0
        for j in range(m + 1):
            base_next = j * (m + 2) - j * (j - 1) // 2
            base_prev = j * m - j * (j - 1) // 2
            for k in range(m + 1 - j):
                if j + k < m:
                    new[base_next + k] = ((x * Q[cur + pos] - axm[base_prev + k] * Q[prev + base_prev + k])
                                          / ax[pos])
                else:
                    new[base_next + k] = x * Q[cur + pos] / ax[pos]
                pos += 1
        yp, ym, ypm = table.y_jp1[m], table.y_jm1[m], table.y_jp1[m - 1]
        for j in range(m + 1):
            k = m - j
            src = ball_index(m, j, k)
            if j == 0:
                val = y * Q[cur + src] / yp[src]
            else:
                lower = ball_index(m - 1, j - 1, k)
                val = ((y * Q[cur + src] - ym[src] * new[ball_index(m + 1, j - 1, k)]
                        - ypm[lower] * Q[prev + lower]) / yp[src])
            new[ball_index(m + 1, j + 1, k)] = val
        src = ball_index(m, 0, m)
        lower = ball_index(m - 1, 0, m - 1)
        new[ball_index(m + 1, 0, m + 1)] = (
            (z * Q[cur + src] - table.z_km1[m][src] * new[ball_index(m + 1, 0, m - 1)]
             - table.z_jp2_km1[m][src] * new[ball_index(m + 1, 2, m - 1)]
             - table.z_kp1[m - 1][lower] * Q[prev + lower]) / table.z_kp1[m][src])
        Q.extend(new)
    return Q


def ball_recurrence_grad(table: BallRecurrenceTable, x, y, z, n: int):
    """Values and the three partial derivatives as flat lists."""
    zero = _const_like(0.0, x)
    Q = [_const_like(INV_SQRT_VOLUME, x)]
    G = [[zero], [zero], [zero]]
    if n == 0:
        return Q, *G
    g = _const_like(DEGREE_ONE, x)
    Q += [DEGREE_ONE * x, DEGREE_ONE * z, DEGREE_ONE * y]
    G[0] += [g, zero, zero]
    G[1] += [zero, zero, g]
    G[2] += [zero, g, zero]
    for m in range(1, n):
        cur, prev = _start(m), _start(m - 1)
        ax, axm = table.x_jk[m], table.x_jk[m - 1]
        size = block_size(m + 1)
        new = [None] * size
        dnew = [[None] * size for _ in range(3)]
        pos = 0
        for j in range(m + 1):
            base_next = j * (m + 2) - j * (j - 1) // 2
            base_prev = j * m - j * (j - 1) // 2
            for k in range(m + 1 - j):
                r = 1.0 / ax[pos]
                i_new = base_next + k
                if j + k < m:
                    cm1 = axm[base_prev + k]
                    i_old = prev + base_prev + k
                    new[i_new] = (x * Q[cur + pos] - cm1 * Q[i_old]) * r
                    for d in range(3):
                        t = x * G[d][cur + pos] - cm1 * G[d][i_old]
                        if d == 0:
                            t = t + Q[cur + pos]
                        dnew[d][i_new] = t * r
                else:
                    new[i_new] = x * Q[cur + pos] * r
                    for d in range(3):
                        t = x * G[d][cur + pos]
                        if d == 0:
                            t = t + Q[cur + pos]
                        dnew[d][i_new] = t * r
                pos += 1
        yp, ym, ypm = table.y_jp1[m], table.y_jm1[m], table.y_jp1[m - 1]
        for j in range(m + 1):
            k = m - j
            src = ball_index(m, j, k)
            dst = ball_index(m + 1, j + 1, k)
            r = 1.0 / yp[src]
            if j == 0:
                new[dst] = y * Q[cur + src] * r
                for d in range(3):
                    t = y * G[d][cur + src]
                    if d == 1:
                        t = t + Q[cur + src]
                    dnew[d][dst] = t * r
            else:
                lower = ball_index(m - 1, j - 1, k)
                side = ball_index(m + 1, j - 1, k)
                new[dst] = (y * Q[cur + src] - ym[src] * new[side]
                            - ypm[lower] * Q[prev + lower]) * r
                for d in range(3):
                    t = y * G[d][cur + src] - ym[src] * dnew[d][side] - ypm[lower] * G[d][prev + lower]
                    if d == 1:
                        t = t + Q[cur + src]
                    dnew[d][dst] = t * r
        src = ball_index(m, 0, m)
        lower = ball_index(m - 1, 0, m - 1)
        s1 = ball_index(m + 1, 0, m - 1)
        s2 = ball_index(m + 1, 2, m - 1)
        dst = ball_index(m + 1, 0, m + 1)
        c1, c2 = table.z_km1[m][src], table.z_jp2_km1[m][src]
        c3, r = table.z_kp1[m - 1][lower], 1.0 / table.z_kp1[m][src]
        new[dst] = (z * Q[cur + src] - c1 * new[s1] - c2 * new[s2] - c3 * Q[prev + lower]) * r
        for d in range(3):
            t = z * G[d][cur + src] - c1 * dnew[d][s1] - c2 * dnew[d][s2] - c3 * G[d][prev + lower]
            if d == 2:
                t = t + Q[cur + src]
            dnew[d][dst] = t * r
        Q.extend(new)
        for d in range(3):
            G[d].extend(dnew[d])
    return Q, *G


def eval_ball_basis(table: BallRecurrenceTable, point, n: int) -> BallBasisValues:
    """All basis values of degree <= n at one point of the closed ball."""
    x, y, z = point
    _check(table, x, y, z, n)
    return BallBasisValues(n, _as_array(ball_recurrence(table, x, y, z, n)))


def eval_ball_basis_grad(table: BallRecurrenceTable, point, n: int) -> BallBasisValues:
    x, y, z = point
    _check(table, x, y, z, n)
    Q, gx, gy, gz = ball_recurrence_grad(table, x, y, z, n)
    return BallBasisValues(n, _as_array(Q), _as_array(gx), _as_array(gy), _as_array(gz))


def _split(points):
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    return pts[:, 0].copy(), pts[:, 1].copy(), pts[:, 2].copy()


def eval_ball_basis_many(table: BallRecurrenceTable, points, n: int) -> np.ndarray:
    """Basis matrix of shape (ball_dim(n), npoints) for an (npoints, 3) array."""
    x, y, z = _split(points)
    _check(table, x, y, z, n)
    return np.asarray(ball_recurrence(table, x, y, z, n))


def eval_ball_basis_grad_many(table: BallRecurrenceTable, points, n: int):
    x, y, z = _split(points)
    _check(table, x, y, z, n)
    return tuple(np.asarray(v) for v in ball_recurrence_grad(table, x, y, z, n))


def ball_norm_sq(n: int, j: int, k: int) -> float:
    """h^2 for Q_n^{j,k}: product of the three squared Gegenbauer norms."""
    ball_index(n, j, k)
    return math.exp(log_gegenbauer_norm_sq(0.5, k) + log_gegenbauer_norm_sq(k + 1.0, j)
                    + log_gegenbauer_norm_sq(j + k + 1.5, n - j - k))


def ball_basis_direct(n: int, j: int, k: int, point) -> float:
    """Q_n^{j,k} from the Gegenbauer product formula, interior points only."""
    x, y, z = (float(v) for v in point)
    if not all(math.isfinite(v) for v in (x, y, z)):
        raise ValueError("non-finite point")
    s1 = 1.0 - x * x
    s2 = s1 - y * y
    if s1 < 1e-14 or s2 < 1e-14:
        raise ValueError("direct formula is only evaluated at interior points")
    r1, r2 = math.sqrt(s1), math.sqrt(s2)
    val = (gegenbauer_eval(j + k + 1.5, n - j - k, x)
           * r1**j * gegenbauer_eval(k + 1.0, j, y / r1)
           * r2**k * gegenbauer_eval(0.5, k, z / r2))
    return val / math.sqrt(ball_norm_sq(n, j, k))


def ball_recurrence_matrices(table: BallRecurrenceTable, n: int):
    """Dense A_{n,1}, A_{n,2}, A_{n,3} of shape (C(n+2,2), C(n+3,2)) from the table."""
    if not 0 <= n < table.max_degree:
        raise ValueError(f"need 0 <= n < {table.max_degree}")
    shape = (block_size(n), block_size(n + 1))
    A = [np.zeros(shape) for _ in range(3)]

    def put(mat, row, j, k, value):
        if j >= 0 and k >= 0 and j + k <= n + 1:
            mat[row, ball_index(n + 1, j, k)] = value

    for row, (j, k) in enumerate(block_pairs(n)):
        put(A[0], row, j, k, table.x_jk[n][row])
        put(A[1], row, j + 1, k, table.y_jp1[n][row])
        put(A[1], row, j - 1, k, table.y_jm1[n][row])
        put(A[2], row, j, k - 1, table.z_km1[n][row])
        put(A[2], row, j + 2, k - 1, table.z_jp2_km1[n][row])
        put(A[2], row, j, k + 1, table.z_kp1[n][row])
        put(A[2], row, j - 2, k + 1, table.z_jm2_kp1[n][row])
    return tuple(A)
