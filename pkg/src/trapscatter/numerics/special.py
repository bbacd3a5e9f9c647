"""Special functions: unnormalized upper incomplete gamma.

Convention: ``upper_incomplete_gamma(a, x) = int_x^inf s^(a-1) e^-s ds``,
so ``upper_incomplete_gamma(a, 0)`` is the complete gamma function.
"""

import math

import numpy as np

from . import _kernels


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Unnormalized upper incomplete gamma, relative accuracy ~1e-12.

    Series representation for x < a+1, continued fraction otherwise.
    """
    if a <= 0.0:
        raise ValueError(f"shape parameter must be positive, got a={a}")
    if x < 0.0:
        raise ValueError(f"lower limit must be nonnegative, got x={x}")
    return _kernels.gamma_upper(a, x)


def upper_incomplete_gamma_vec(a: float, xs) -> np.ndarray:
    """Vectorized :func:`upper_incomplete_gamma` over the lower limit."""
    if a <= 0.0:
        raise ValueError(f"shape parameter must be positive, got a={a}")
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if np.any(xs < 0.0):
        raise ValueError("lower limits must be nonnegative")
    out = np.empty_like(xs)
    _kernels.gamma_upper_vec(a, xs, out)
    return out


def upper_incomplete_gamma_regularized(a: float, x: float) -> float:
    """Q(a, x) = Gamma(a, x)/Gamma(a); stays finite for any shape a."""
    if a <= 0.0:
        raise ValueError(f"shape parameter must be positive, got a={a}")
    if x < 0.0:
        raise ValueError(f"lower limit must be nonnegative, got x={x}")
    return _kernels.gamma_upper_reg(a, x)


def log_gamma(a: float) -> float:
    return math.lgamma(a)
