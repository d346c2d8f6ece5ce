import math
from fractions import Fraction

import numpy as np
import pytest


def disk_points(rng, count, radius=1.0):
    """Uniform random points in the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(size=count))
    t = rng.uniform(0, 2 * np.pi, size=count)
    return np.column_stack([r * np.cos(t), r * np.sin(t)])


def ball_points(rng, count, radius=1.0):
    v = rng.standard_normal((count, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return v * (radius * rng.uniform(size=count) ** (1 / 3))[:, None]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def dfact(n):
    """(n)!! with (-1)!! = 0!! = 1."""
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def disk_moment(a, b):
    """Integral of x^a y^b over the unit disk, as a rational multiple of pi."""
    if a % 2 or b % 2:
        return Fraction(0)
    return Fraction(2 * dfact(a - 1) * dfact(b - 1), dfact(a + b) * (a + b + 2))


def ball_moment(a, b, c):
    """Integral of x^a y^b z^c over the unit ball, as a rational multiple of pi."""
    if a % 2 or b % 2 or c % 2:
        return Fraction(0)
    return Fraction(4 * dfact(a - 1) * dfact(b - 1) * dfact(c - 1),
                    dfact(a + b + c + 1) * (a + b + c + 3))
