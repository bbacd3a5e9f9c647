"""Momentum-space route for arbitrary anti-trap strength.

The inverted-oscillator propagator in momentum space (the harmonic
Mehler kernel continued to imaginary frequency) evolves the ground-state
Gaussian in closed form, so the driven steady state is a single time
integral per momentum sample.  This route covers inv_ratio != trap_ratio,
where the Fock-basis squeeze construction does not apply, and the
free-particle limit inv_ratio -> 0 used as a cross-module oracle.

Momenta are in ground-trap units k~ = k (hbar / m omega_T)^(1/2); all
phases take principal square roots, whose arguments here stay in the
right half plane, so the kernel prefactor is continuous in time.
"""

import math

import numpy as np

from .free_excited import MomentumState
from .numerics import _kernels, gauss_legendre
from .params import ANTI, EQUAL, FREE, Params

STEADY_TIME = 13.0


def mehler_kernel(k, k_prime, tau: float, inv_ratio: float, trap_ratio: float = 1.0):
    """Momentum-space inverted-oscillator propagator <k|U(tau)|k'>.

    Singular as tau -> 0 (it tends to a delta function); use
    :func:`evolved_gaussian` for short times.  As inv_ratio -> 0 the
    magnitude approaches the free-particle limit, which preserves momentum
    distributions.
    """
    if tau <= 0.0:
        raise ValueError("kernel is singular at tau <= 0; use evolved_gaussian")
    if inv_ratio <= 0.0:
        raise ValueError("inv_ratio must be positive for the kernel form")
    rho = inv_ratio / trap_ratio
    ph = inv_ratio * tau
    sh, ch = np.sinh(ph), np.cosh(ph)
    pref = np.sqrt(1j / (2.0 * np.pi * rho * sh))
    k = np.asarray(k, dtype=float)
    kp = np.asarray(k_prime, dtype=float)
    expo = -1j * ((k * k + kp * kp) * ch - 2.0 * k * kp) / (2.0 * rho * sh)
    out = pref * np.exp(expo)
    return out if out.shape else complex(out)


def evolved_gaussian(k, tau: float, inv_ratio: float, trap_ratio: float):
    """Ground-state Gaussian after evolving a time tau in the excited potential.

    inv_ratio = 0 gives free flight (a pure momentum-dependent phase); for
    an inverted potential the variance grows as
    <k^2(tau)> = <k^2(0)> [(1+r^2) cosh(2 inv tau) + (1-r^2)] / 2 with
    r = inv_ratio/trap_ratio, i.e. cosh(2 w tau) exactly at r = 1.
    """
    if tau < 0.0:
        raise ValueError("tau must be nonnegative")
    k = np.asarray(k, dtype=float)
    pref = np.pi**-0.25
    if inv_ratio == 0.0:
        out = pref * np.exp(-0.5 * k * k) * np.exp(-0.5j * trap_ratio * k * k * tau)
    else:
        rho = inv_ratio / trap_ratio
        ph = inv_ratio * tau
        ch, sh = np.cosh(ph), np.sinh(ph)
        norm = pref / np.sqrt(ch - 1j * rho * sh)
        expo = (k * k / (2.0 * rho)) * (sh - 1j * rho * ch) / (rho * sh + 1j * ch)
        out = norm * np.exp(expo)
    return out if out.shape else complex(out)


def _case_inv(params: Params) -> float:
    if params.case == ANTI:
        return float(params.inv_ratio)
    if params.case == FREE:
        return 0.0
    if params.case == EQUAL:
        raise ValueError("equal trapping has an exact Fock-ladder solution; "
                         "this route handles free or anti-trapped excited states")
    raise ValueError(f"unknown case {params.case!r}")


def steady_state_k(params: Params, t_final: float = STEADY_TIME,
                   k_max: float = 25.0, n_points: int = 2001,
                   tol_abs: float = 1e-8) -> MomentumState:
    """Driven excited amplitude at time t_final on a uniform k~ grid.

    psi(k) = -i (drive/2) int_0^t exp[(i detuning - 1/2) T] g(k, T) dT with
    the evolved-Gaussian closed form inside (no kernel singularity), each
    momentum sample integrated adaptively.  Amplitude conventions match the
    direct free-state steady state.
    """
    inv = _case_inv(params)
    grid = np.linspace(-k_max, k_max, n_points)
    xg, wg = gauss_legendre(10)
    amps = params.drive * _kernels.steady_amp_grid(
        np.ascontiguousarray(grid),
        float(params.trap_ratio),
        float(inv),
        float(params.detuning),
        float(t_final),
        float(tol_abs),
        np.ascontiguousarray(xg),
        np.ascontiguousarray(wg),
    )
    wts = np.full(n_points, grid[1] - grid[0])
    wts[0] = wts[-1] = 0.5 * (grid[1] - grid[0])
    return MomentumState(grid=grid, amps=amps, weights=wts)


def spectrum(params: Params, detunings, t_final: float = STEADY_TIME,
             k_max: float = 25.0, n_points: int = 2001) -> np.ndarray:
    """Total rate / ideal rate over a detuning grid (anti-trapped route).

    Symmetric in detuning when inv_ratio = trap_ratio; otherwise the peak
    leans toward whichever side the larger of the two frequencies favours.
    """
    if params.case != ANTI:
        raise ValueError("spectrum sweeps are for the anti-trapped case")
    detunings = np.asarray(detunings, dtype=float)
    out = np.empty(detunings.size)
    for i, d in enumerate(detunings):
        p = Params(trap_ratio=params.trap_ratio, detuning=float(d),
                   drive=params.drive, eta=params.eta, case=ANTI,
                   inv_ratio=params.inv_ratio)
        st = steady_state_k(p, t_final=t_final, k_max=k_max, n_points=n_points)
        out[i] = st.norm_sq() / params.drive**2
    return out
