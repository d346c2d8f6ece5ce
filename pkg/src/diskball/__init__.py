"""Orthonormal polynomials, product quadrature and hyperinterpolation on the unit disk and ball."""

from .approx import (
    EllipseFit,
    Expansion,
    eval_expansion,
    eval_expansion_grad,
    eval_expansion_many,
    fit_ellipse,
    project_ball,
    project_disk,
    read_coeffs,
    sup_error,
    write_coeffs,
)
from .ball_basis import (
    BallBasisValues,
    BallRecurrenceTable,
    ball_basis_direct,
    ball_index,
    build_ball_coeffs,
    eval_ball_basis,
    eval_ball_basis_grad,
)
from .disk_basis import (
    DiskBasisValues,
    DiskRecurrenceTable,
    build_disk_coeffs,
    disk_basis_direct,
    eval_disk_basis,
    eval_disk_basis_grad,
    index,
)
from .quadrature import ProductRule, ball_rule, discrete_inner, disk_rule
from .univariate import (
    GaussRule1D,
    gauss_jacobi_02,
    gauss_legendre_unit,
    gegenbauer_eval,
    gegenbauer_norm_sq,
)

__version__ = "0.1.0"
