"""Shared numerical kernels: quadrature, special functions, fits."""

from .backend import BACKEND, HAVE_NUMBA, USE_NUMBA
from .fitting import (
    fit_exponent_with_offset,
    fit_loglog_slope,
    fit_lorentzian_halfwidth,
    richardson_quadratic_coefficient,
)
from .quad import (
    QuadResult,
    gauss_legendre,
    golden_section_max,
    integrate_decaying_oscillatory,
    integrate_line,
)
from .special import (
    log_gamma,
    upper_incomplete_gamma,
    upper_incomplete_gamma_regularized,
    upper_incomplete_gamma_vec,
)

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "USE_NUMBA",
    "QuadResult",
    "fit_exponent_with_offset",
    "fit_loglog_slope",
    "fit_lorentzian_halfwidth",
    "gauss_legendre",
    "golden_section_max",
    "integrate_decaying_oscillatory",
    "integrate_line",
    "log_gamma",
    "richardson_quadratic_coefficient",
    "upper_incomplete_gamma",
    "upper_incomplete_gamma_regularized",
    "upper_incomplete_gamma_vec",
]
