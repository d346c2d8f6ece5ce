"""Univariate building blocks: Gegenbauer polynomials and 1D Gauss rules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal


class WeightKind(str, Enum):
    LEGENDRE_UNIT_INTERVAL = "legendre_unit_interval"
    JACOBI_0_2_SYMMETRIC = "jacobi_0_2_symmetric"


@dataclass(frozen=True)
class GaussRule1D:
    """Nodes and weights of a one-dimensional Gauss rule."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]
    weight_kind: WeightKind

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f) -> float:
        """Apply the rule to ``f``, which must accept a numpy array."""
        return float(np.sum(self.weights * f(self.nodes)))


def gegenbauer_eval(lam: float, n: int, t):
    """Evaluate C_n^lam(t) by forward three-term recursion.

    ``t`` may be a float or a numpy array.
    """
    if not lam > 0:
        raise ValueError(f"Gegenbauer parameter must be positive, got {lam}")
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if not np.all(np.isfinite(t)):
        raise ValueError("non-finite argument")
    c_prev = np.ones_like(t, dtype=float) if isinstance(t, np.ndarray) else 1.0
    if n == 0:
        return c_prev
    c = 2.0 * lam * t
    for k in range(1, n):
        c, c_prev = (2.0 * (k + lam) * t * c - (k + 2.0 * lam - 1.0) * c_prev) / (k + 1), c
    return c


def log_gegenbauer_norm_sq(mu: float, k: int) -> float:
    if not mu > 0:
        raise ValueError(f"Gegenbauer parameter must be positive, got {mu}")
    return (math.log(math.pi) + math.lgamma(2.0 * mu + k)
            - (2.0 * mu - 1.0) * math.log(2.0) - math.lgamma(k + 1.0)
            - math.log(mu + k) - 2.0 * math.lgamma(mu))


def gegenbauer_norm_sq(mu: float, k: int) -> float:
    """Weighted L2 norm-square of C_k^mu with weight (1 - t^2)^(mu - 1/2).

    Evaluated through log-gamma so that large ``k + 2*mu`` does not overflow.
    """
    return math.exp(log_gegenbauer_norm_sq(mu, k))


def _golub_welsch(diag, offdiag_sq, mu0):
    nodes, vecs = eigh_tridiagonal(np.asarray(diag, dtype=float),
                                   np.sqrt(np.asarray(offdiag_sq, dtype=float)))
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


def gauss_legendre_unit(npts: int) -> GaussRule1D:
    """``npts``-point Gauss-Legendre rule on [0, 1], exact to degree 2*npts - 1."""
    if npts < 1:
        raise ValueError("a Gauss rule needs at least one point")
    k = np.arange(1, npts)
    t, w = _golub_welsch(np.zeros(npts), k**2 / (4.0 * k**2 - 1.0), 2.0)
    # symmetrize to kill eigen-solver asymmetry
    t = 0.5 * (t - t[::-1])
    w = 0.5 * (w + w[::-1])
    return GaussRule1D(0.5 * (t + 1.0), 0.5 * w, (0.0, 1.0),
                       WeightKind.LEGENDRE_UNIT_INTERVAL)


def gauss_legendre_symmetric(npts: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    rule = gauss_legendre_unit(npts)
    return 2.0 * rule.nodes - 1.0, 2.0 * rule.weights


def gauss_jacobi_02(q: int) -> GaussRule1D:
    """``q``-point Gauss rule on [-1, 1] for the weight (1 + t)^2.

    Exact for p(t) (1 + t)^2 with deg p <= 2q - 1. Weights are returned raw,
    summing to 8/3.
    """
    if q < 1:
        raise ValueError("a Gauss rule needs at least one point")
    alpha, beta = 0.0, 2.0
    ab = alpha + beta
    n = np.arange(q, dtype=float)
    diag = (beta**2 - alpha**2) / ((2 * n + ab) * (2 * n + ab + 2))
    m = np.arange(1, q, dtype=float)
    offdiag_sq = (4 * m * (m + alpha) * (m + beta) * (m + ab)
                  / ((2 * m + ab) ** 2 * (2 * m + ab + 1) * (2 * m + ab - 1)))
    mu0 = 2.0 ** (ab + 1) * math.gamma(alpha + 1) * math.gamma(beta + 1) / math.gamma(ab + 2)
    t, w = _golub_welsch(diag, offdiag_sq, mu0)
    return GaussRule1D(t, w, (-1.0, 1.0), WeightKind.JACOBI_0_2_SYMMETRIC)
