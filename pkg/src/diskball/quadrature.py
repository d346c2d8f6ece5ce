"""Product quadrature rules on the unit disk and unit ball."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .univariate import gauss_jacobi_02, gauss_legendre_symmetric, gauss_legendre_unit

DOMAINS = ("disk", "ball")
MEASURE = {"disk": math.pi, "ball": 4.0 * math.pi / 3.0}


@dataclass(frozen=True)
class ProductRule:
    domain: str
    points: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    q: int

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.weights)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def coords(self):
        """Coordinate arrays (x, y[, z])."""
        return tuple(self.points[:, i] for i in range(self.dim))

    def integrate(self, g) -> float:
        """Apply the rule to ``g(x, y[, z])``, which must accept numpy arrays."""
        return float(np.sum(self.weights * g(*self.coords())))


def disk_rule(q: int) -> ProductRule:
    """(q+1) radial Gauss-Legendre points times 2q+1 equispaced angles; exact on degree <= 2q."""
    if q < 0:
        raise ValueError("q must be non-negative")
    radial = gauss_legendre_unit(q + 1)
    nang = 2 * q + 1
    theta = 2.0 * math.pi * np.arange(nang) / nang
    r = np.repeat(radial.nodes, nang)
    th = np.tile(theta, q + 1)
    w = np.repeat(radial.weights * radial.nodes, nang) * (2.0 * math.pi / nang)
    pts = np.column_stack([r * np.cos(th), r * np.sin(th)])
    return ProductRule("disk", pts, w, 2 * q, q)


def ball_rule(q: int) -> ProductRule:
    """2q x q x q spherical product rule; exact on degree <= 2q - 1."""
    if q < 1:
        raise ValueError("q must be at least 1")
    jac = gauss_jacobi_02(q)
    r = 0.5 * (jac.nodes + 1.0)
    nu = jac.weights / 8.0
    xi, omega = gauss_legendre_symmetric(q)
    theta = math.pi * np.arange(1, 2 * q + 1) / q
    # order: theta outermost, then polar, then radial
    T, P, R = np.meshgrid(theta, np.arange(q), np.arange(q), indexing="ij")
    T, P, R = T.ravel(), P.ravel(), R.ravel()
    rr = r[R]
    cos_phi = xi[P]
    sin_phi = np.sqrt(1.0 - cos_phi**2)
    pts = np.column_stack([rr * sin_phi * np.cos(T), rr * sin_phi * np.sin(T), rr * cos_phi])
    w = (math.pi / q) * omega[P] * nu[R]
    return ProductRule("ball", pts, w, 2 * q - 1, q)


def make_rule(domain: str, q: int) -> ProductRule:
    if domain == "disk":
        return disk_rule(q)
    if domain == "ball":
        return ball_rule(q)
    raise ValueError(f"unknown domain {domain!r}")


def discrete_inner(rule: ProductRule, f_samples, g_samples) -> float:
    """Discrete inner product sum_i w_i f(p_i) g(p_i).

    numpy's contiguous sum is pairwise, so the result is reproducible.
    """
    f = np.asarray(f_samples, dtype=float)
    g = np.asarray(g_samples, dtype=float)
    if f.shape != rule.weights.shape or g.shape != rule.weights.shape:
        raise ValueError(f"expected {len(rule)} samples, got {f.shape} and {g.shape}")
    return float(np.sum(rule.weights * f * g))


def monomial_integral(domain: str, exponents) -> float:
    """Exact integral of x^a y^b [z^c] over the unit disk or ball."""
    exps = tuple(int(e) for e in exponents)
    d = {"disk": 2, "ball": 3}[domain]
    if len(exps) != d:
        raise ValueError(f"{domain} monomials need {d} exponents")
    if any(e % 2 for e in exps):
        return 0.0
    betas = [(e + 1) / 2.0 for e in exps]
    log_val = (sum(math.lgamma(b) for b in betas) - math.lgamma(sum(betas)))
    return 2.0 * math.exp(log_val) / (sum(exps) + d)


def monomials(dim: int, degree: int):
    """All exponent tuples of total degree exactly ``degree``."""
    for exps in itertools.product(range(degree + 1), repeat=dim - 1):
        if sum(exps) <= degree:
            yield (*exps, degree - sum(exps))


def exactness_report(rule: ProductRule, max_degree: int | None = None, rtol: float = 1e-11):
    """Worst error over monomials of each total degree up to ``max_degree``.

    Returns ``[(degree, max_abs_error, ok)]`` where ``ok`` compares against
    ``rtol * max(1, |exact|)``.
    """
    if max_degree is None:
        max_degree = rule.exactness_degree
    coords = rule.coords()
    out = []
    for deg in range(max_degree + 1):
        worst, ok = 0.0, True
        for exps in monomials(rule.dim, deg):
            vals = np.ones(len(rule))
            for c, e in zip(coords, exps):
                vals = vals * c**e
            exact = monomial_integral(rule.domain, exps)
            err = abs(float(np.sum(rule.weights * vals)) - exact)
            worst = max(worst, err)
            ok = ok and err <= rtol * max(1.0, abs(exact))
        out.append((deg, worst, ok))
    return out
