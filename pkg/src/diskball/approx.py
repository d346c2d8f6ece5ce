"""Discrete least-squares (hyperinterpolation) projection on the disk and ball.

Coefficients are discrete inner products (f, Q)_q under a product rule. The
function is sampled once per node; the basis matrix is evaluated once for all
nodes and reduced node-wise with numpy's pairwise summation.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import ball_basis as bb
from . import disk_basis as db
from .quadrature import ProductRule, make_rule


@lru_cache(maxsize=8)
def disk_table(max_degree: int) -> db.DiskRecurrenceTable:
    return db.build_disk_coeffs(max_degree)


@lru_cache(maxsize=8)
def ball_table(max_degree: int) -> bb.BallRecurrenceTable:
    return bb.build_ball_coeffs(max_degree)


def basis_size(domain: str, n: int) -> int:
    if domain == "disk":
        return db.dim(n)
    if domain == "ball":
        return bb.ball_dim(n)
    raise ValueError(f"unknown domain {domain!r}")


def basis_matrix(domain: str, points, n: int) -> np.ndarray:
    """Basis values of degree <= n, shape (basis_size, npoints)."""
    if domain == "disk":
        return db.eval_disk_basis_many(disk_table(n), points, n)
    if domain == "ball":
        return bb.eval_ball_basis_many(ball_table(n), points, n)
    raise ValueError(f"unknown domain {domain!r}")


def basis_grad_matrices(domain: str, points, n: int):
    if domain == "disk":
        return db.eval_disk_basis_grad_many(disk_table(n), points, n)
    if domain == "ball":
        return bb.eval_ball_basis_grad_many(ball_table(n), points, n)
    raise ValueError(f"unknown domain {domain!r}")


def min_quad(domain: str, n: int) -> int:
    """Smallest q that reproduces every polynomial of degree n."""
    return n if domain == "disk" else n + 1


@dataclass(frozen=True)
class Expansion:
    domain: str
    degree: int
    coeffs: np.ndarray
    quad_q: int | None = None

    def __post_init__(self):
        if len(self.coeffs) != basis_size(self.domain, self.degree):
            raise ValueError(f"expected {basis_size(self.domain, self.degree)} coefficients "
                             f"for degree {self.degree} on the {self.domain}, got {len(self.coeffs)}")
        if self.quad_q is not None and self.quad_q < self.degree:
            raise ValueError("quad_q must be at least the degree")

    def truncate(self, n: int) -> Expansion:
        """The same coefficients restricted to degree <= n."""
        if n > self.degree:
            raise ValueError("cannot truncate to a higher degree")
        return Expansion(self.domain, n, self.coeffs[: basis_size(self.domain, n)].copy(),
                         self.quad_q)

    def __call__(self, *coords):
        pts = np.column_stack([np.atleast_1d(np.asarray(c, dtype=float)) for c in coords])
        out = eval_expansion_many(self, pts)
        return out if np.ndim(coords[0]) else float(out[0])


def _sample(f, rule: ProductRule) -> np.ndarray:
    vals = np.asarray(f(*rule.coords()), dtype=float)
    return np.broadcast_to(vals, rule.weights.shape).copy()


def project_samples(domain: str, rule: ProductRule, samples, n: int) -> Expansion:
    """Coefficients from precomputed function values at the rule's nodes."""
    if rule.q < min_quad(domain, n):
        raise ValueError(f"q={rule.q} is too small to reproduce degree {n} on the {domain}; "
                         f"need q >= {min_quad(domain, n)}")
    V = basis_matrix(domain, rule.points, n)
    wf = rule.weights * np.asarray(samples, dtype=float)
    coeffs = np.sum(V * wf, axis=1)
    return Expansion(domain, n, coeffs, rule.q)


def project(domain: str, f, n: int, q: int) -> Expansion:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if q < min_quad(domain, n):
        raise ValueError(f"q={q} is too small to reproduce degree {n} on the {domain}; "
                         f"need q >= {min_quad(domain, n)}")
    rule = make_rule(domain, q)
    return project_samples(domain, rule, _sample(f, rule), n)


def project_disk(f, n: int, q: int) -> Expansion:
    """Discrete least-squares projection of ``f(x, y)`` onto degree <= n, with q >= n."""
    return project("disk", f, n, q)


def project_ball(f, n: int, q: int) -> Expansion:
    """Discrete least-squares projection of ``f(x, y, z)`` onto degree <= n, with q >= n + 1."""
    return project("ball", f, n, q)


def eval_expansion(e: Expansion, point) -> float:
    """Sum of coefficient times basis value, from one basis pass."""
    coords = tuple(point)
    if e.domain == "disk":
        Q = db.eval_disk_basis(disk_table(e.degree), coords, e.degree).values
    else:
        Q = bb.eval_ball_basis(ball_table(e.degree), coords, e.degree).values
    return float(np.dot(e.coeffs, Q))


def eval_expansion_many(e: Expansion, points) -> np.ndarray:
    return e.coeffs @ basis_matrix(e.domain, points, e.degree)


def eval_expansion_grad(e: Expansion, point):
    """(value, gradient) of the expansion at one point."""
    coords = tuple(point)
    if e.domain == "disk":
        bv = db.eval_disk_basis_grad(disk_table(e.degree), coords, e.degree)
        grads = (bv.grad_x, bv.grad_y)
    else:
        bv = bb.eval_ball_basis_grad(ball_table(e.degree), coords, e.degree)
        grads = (bv.grad_x, bv.grad_y, bv.grad_z)
    return float(np.dot(e.coeffs, bv.values)), np.array([np.dot(e.coeffs, g) for g in grads])


def default_grid(e: Expansion) -> np.ndarray:
    """Nodes of a finer rule than the one used for fitting."""
    q = (e.quad_q if e.quad_q is not None else min_quad(e.domain, e.degree)) + 10
    return make_rule(e.domain, q).points


def sup_error(f, e: Expansion, grid=None) -> float:
    """max |f - e| over the grid points."""
    pts = default_grid(e) if grid is None else np.asarray(grid, dtype=float)
    if pts.size == 0:
        raise ValueError("empty error grid")
    pts = pts.reshape(len(pts), -1)
    fv = np.asarray(f(*(pts[:, i] for i in range(pts.shape[1]))), dtype=float)
    return float(np.max(np.abs(fv - eval_expansion_many(e, pts))))


def random_expansion(domain: str, n: int, seed=0) -> Expansion:
    """Seeded random element of the degree-n polynomials (normal coefficients)."""
    rng = np.random.default_rng(seed)
    return Expansion(domain, n, rng.standard_normal(basis_size(domain, n)))


@dataclass(frozen=True)
class EllipseFit:
    """Polynomial approximation on the ellipse (xi/a)^2 + (eta/b)^2 <= 1."""

    a: float
    b: float
    expansion: Expansion

    def __call__(self, xi, eta):
        return self.expansion(np.asarray(xi) / self.a, np.asarray(eta) / self.b)


def fit_ellipse(f, a: float, b: float, n: int, q: int) -> EllipseFit:
    """Fit ``f(xi, eta)`` on an ellipse by projecting g(x, y) = f(a x, b y) on the disk."""
    if not (a > 0 and b > 0):
        raise ValueError("ellipse semi-axes must be positive")
    return EllipseFit(float(a), float(b), project_disk(lambda x, y: f(a * x, b * y), n, q))


def coeff_rows(e: Expansion):
    """Index columns and coefficient for each basis function, in storage order."""
    for m in range(e.degree + 1):
        if e.domain == "disk":
            for k in range(m + 1):
                yield (m, k), e.coeffs[db.index(m, k)]
        else:
            for j, k in bb.block_pairs(m):
                yield (m, k, j), e.coeffs[bb.ball_flat_index(m, j, k)]


def coeff_header(domain: str):
    return ["degree", "k", "coefficient"] if domain == "disk" else ["degree", "k", "j", "coefficient"]


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_coeffs(e: Expansion, path) -> None:
    """CSV ``degree,k[,j],coefficient`` with 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(coeff_header(e.domain))
        for idx, c in coeff_rows(e):
            w.writerow([*idx, fmt(c)])


def read_coeffs(path, quad_q: int | None = None) -> Expansion:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header == coeff_header("disk"):
        domain = "disk"
    elif header == coeff_header("ball"):
        domain = "ball"
    else:
        raise ValueError(f"unrecognised coefficient header {header}")
    n = max(int(r[0]) for r in body) if body else 0
    coeffs = np.zeros(basis_size(domain, n))
    for r in body:
        m, k = int(r[0]), int(r[1])
        i = db.index(m, k) if domain == "disk" else bb.ball_flat_index(m, int(r[2]), k)
        coeffs[i] = float(r[-1])
    return Expansion(domain, n, coeffs, quad_q)


def disk_lattice(m: int) -> np.ndarray:
    """m x m Cartesian lattice on [-1, 1]^2 intersected with the closed disk."""
    t = np.linspace(-1.0, 1.0, m)
    X, Y = np.meshgrid(t, t, indexing="ij")
    keep = X**2 + Y**2 <= 1.0
    return np.column_stack([X[keep], Y[keep]])


def ball_lattice(m: int) -> np.ndarray:
    t = np.linspace(-1.0, 1.0, m)
    X, Y, Z = np.meshgrid(t, t, t, indexing="ij")
    keep = X**2 + Y**2 + Z**2 <= 1.0
    return np.column_stack([X[keep], Y[keep], Z[keep]])


def lattice(domain: str, m: int) -> np.ndarray:
    return disk_lattice(m) if domain == "disk" else ball_lattice(m)

