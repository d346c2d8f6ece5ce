"""Built-in test functions, selected by id from the command line."""

from __future__ import annotations

import numpy as np

from .approx import random_expansion

DISK_FUNCTIONS = ("testfcn", "runge2d", "poly-reproduce")
BALL_FUNCTIONS = ("expxyz", "poly-reproduce-3d")


def testfcn(x, y):
    return (1.0 + x) / (1.0 + x**2 + y**2) * np.cos(6.0 * x * y**2)


def runge2d(x, y):
    return 1.0 / (1.0 + 25.0 * (x**2 + y**2))


def expxyz(x, y, z):
    return np.exp(x + y + z)


def get_function(domain: str, name: str, poly_degree: int = 5, seed: int = 0):
    """Return a vectorised callable for the named built-in."""
    if domain == "disk":
        if name == "testfcn":
            return testfcn
        if name == "runge2d":
            return runge2d
        if name == "poly-reproduce":
            return random_expansion("disk", poly_degree, seed)
        known = DISK_FUNCTIONS
    elif domain == "ball":
        if name == "expxyz":
            return expxyz
        if name == "poly-reproduce-3d":
            return random_expansion("ball", poly_degree, seed)
        known = BALL_FUNCTIONS
    else:
        raise ValueError(f"unknown domain {domain!r}")
    raise ValueError(f"unknown function {name!r} for the {domain}; choose from {', '.join(known)}")
