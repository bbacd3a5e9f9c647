"""Matrix elements and state constructions in the ground-trap Fock basis.

Covers the photon-kick (displacement) matrix elements, the squeezed state
produced by letting an inverted harmonic potential act on the vacuum, the
angular moments of the dipole emission pattern, and momentum-space
harmonic-oscillator wavefunctions.
"""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import TruncationError
from .numerics import _kernels

PARITY_ALL = "all"
PARITY_EVEN = "even"

#: default bound on the relative norm allowed in the last retained state
TRUNCATION_TOL = 1e-8


@dataclass(frozen=True)
class FockAmplitudes:
    """Complex amplitudes over number states 0..n_max of the ground trap."""

    amps: np.ndarray
    parity: Literal["all", "even"] = PARITY_ALL

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def populations(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def tail_fraction(self) -> float:
        """Population share of the last retained number state."""
        p = self.populations()
        total = p.sum()
        return float(p[-1] / total) if total > 0 else 0.0


def displacement_element(n_out: int, n_in: int, eta: float) -> complex:
    """<n_out| exp(i eta (a + a^dag)) |n_in>.

    Closed associated-Laguerre form; the factorial ratio is accumulated in
    log space so elements stay finite for n ~ 1e3.  Magnitudes fall off as
    eta^|n_out - n_in| for small eta.
    """
    if n_out < 0 or n_in < 0:
        raise ValueError("Fock indices must be nonnegative")
    if eta == 0.0:
        return 1.0 + 0.0j if n_out == n_in else 0.0 + 0.0j
    lo, hi = (n_out, n_in) if n_out <= n_in else (n_in, n_out)
    dn = hi - lo
    x = eta * eta
    # L_lo^(dn)(x) by the standard three-term recurrence
    lag_prev = 1.0
    lag = 1.0 + dn - x
    if lo == 0:
        lag = lag_prev
    else:
        for i in range(1, lo):
            lag_prev, lag = lag, (
                (2 * i + 1 + dn - x) * lag - (i + dn) * lag_prev
            ) / (i + 1.0)
    log_pref = -0.5 * x + dn * math.log(abs(eta)) + 0.5 * (
        math.lgamma(lo + 1) - math.lgamma(hi + 1)
    )
    phase = (1j * math.copysign(1.0, eta)) ** dn
    return phase * math.exp(log_pref) * lag


def displacement_column(n_max: int, eta: float) -> np.ndarray:
    """<n| exp(i eta (a + a^dag)) |0> for n = 0..n_max (fast path)."""
    n = np.arange(n_max + 1)
    if eta == 0.0:
        out = np.zeros(n_max + 1, dtype=complex)
        out[0] = 1.0
        return out
    from scipy.special import gammaln

    log_mag = -0.5 * eta * eta + n * np.log(abs(eta)) - 0.5 * gammaln(n + 1.0)
    return (1j * np.sign(eta)) ** n * np.exp(log_mag)


def squeeze_vacuum(phase: float, n_max: int, tol: float = TRUNCATION_TOL) -> FockAmplitudes:
    """Vacuum evolved under the inverted-potential generator for one interval.

    ``phase`` is the trap frequency times the evolution interval.  Only even
    number states are populated:

        amps[2n] = (i tanh(phase))^n / sqrt(cosh(phase)) * sqrt((2n)!)/(2^n n!)

    evaluated by the ratio recurrence
    amps[2n+2]/amps[2n] = i tanh(phase) sqrt((2n+1)(2n+2)) / (2(n+1)),
    which avoids factorial overflow at any n.  (The phase alternation +i
    per step is fixed by a matrix exponential of the generator; populations
    do not depend on it.)

    Raises :class:`TruncationError` if the last retained state holds more
    than ``tol`` of the norm.
    """
    if phase < 0.0:
        raise ValueError("phase must be nonnegative")
    amps = np.zeros(n_max + 1, dtype=complex)
    th = math.tanh(phase)
    cur_c = complex(1.0 / math.sqrt(math.cosh(phase)))
    amps[0] = cur_c
    n = 0
    while 2 * (n + 1) <= n_max:
        ratio = 1j * th * math.sqrt((2 * n + 1) * (2 * n + 2)) / (2.0 * (n + 1))
        cur_c = cur_c * ratio
        n += 1
        amps[2 * n] = cur_c
    state = FockAmplitudes(amps=amps, parity=PARITY_EVEN)
    tail = abs(amps[2 * n]) ** 2 / state.norm_sq()
    if phase > 0.0 and tail > tol:
        raise TruncationError(
            f"squeezed state at phase={phase} keeps {tail:.3e} "
            f"of its norm in the last retained state; raise n_max={n_max}"
        )
    return state


def emission_moment(p: int) -> float:
    """Angular moment int dOmega Phi(theta) cos^p(theta).

    Phi is the circular-dipole pattern (3/16 pi)(1 + cos^2 theta), so the
    moment is (3/4)(1/(p+1) + 1/(p+3)) for even p.  Only p in {0, 2, 4} is
    needed or supported.
    """
    if p not in (0, 2, 4):
        raise ValueError(f"unsupported angular moment p={p}")
    return 0.75 * (1.0 / (p + 1) + 1.0 / (p + 3))


def fock_momentum_wavefunction(n: int, k_tilde):
    """Momentum-space oscillator eigenfunction phi_n(k~), real and
    orthonormal on the dimensionless momentum line."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = np.asarray(k_tilde, dtype=float)
    prev = np.pi**-0.25 * np.exp(-0.5 * k * k)
    if n == 0:
        out = prev
    else:
        cur = np.sqrt(2.0) * k * prev
        for m in range(1, n):
            prev, cur = cur, np.sqrt(2.0 / (m + 1)) * k * cur - np.sqrt(m / (m + 1.0)) * prev
        out = cur
    return out if out.shape else float(out)


def hermite_functions(n_max: int, k_tilde: np.ndarray) -> np.ndarray:
    """Matrix phi_n(k~) of shape (n_max+1, len(k~)) by upward recurrence."""
    k = np.asarray(k_tilde, dtype=float)
    out = np.empty((n_max + 1, k.size))
    out[0] = np.pi**-0.25 * np.exp(-0.5 * k * k)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * k * out[0]
    for n in range(1, n_max):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * k * out[n] - np.sqrt(n / (n + 1.0)) * out[n - 1]
    return out


def project_onto_fock(k_grid: np.ndarray, weights: np.ndarray, psi: np.ndarray,
                      n_max: int) -> np.ndarray:
    """Quadrature projection <n|psi> for n = 0..n_max on a fixed k~ grid."""
    return _kernels.hermite_project(
        np.ascontiguousarray(k_grid, dtype=np.float64),
        np.ascontiguousarray(weights, dtype=np.float64),
        np.ascontiguousarray(psi, dtype=np.complex128),
        int(n_max),
    )
