"""Free excited state: momentum-space quasi-steady state and its rates.

The driven amplitude lives on the dimensionless momentum line
k~ = k (hbar / m omega_T)^(1/2); the kinetic term enters as
trap_ratio * k~^2 against the Lorentzian linewidth penalty.  Detuning to
the blue resonantly excites the pair of wavevectors trap_ratio*k~^2 = 2*detuning,
which is the origin of the blue-shifted, asymmetric spectra.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import QuadratureError, TruncationError
from .fock import fock_momentum_wavefunction, project_onto_fock
from .numerics import gauss_legendre, golden_section_max, integrate_line
from .params import FREE, Params, RateResult, static_rate

#: grid-boundary integrand must fall below this fraction of its peak
GRID_EDGE_TOL = 1e-10
#: relative norm change allowed between grid refinements
GRID_REFINE_TOL = 1e-6


class Branch(Enum):
    SMALL_TRAP = "small"
    LARGE_TRAP = "large"


@dataclass(frozen=True)
class MomentumState:
    """Complex amplitude sampled on a symmetric k~ grid with quadrature weights."""

    grid: np.ndarray
    amps: np.ndarray
    weights: np.ndarray

    def norm_sq(self) -> float:
        return float(np.sum(self.weights * np.abs(self.amps) ** 2))

    def momentum_variance(self) -> float:
        dens = self.weights * np.abs(self.amps) ** 2
        return float(np.sum(self.grid**2 * dens) / np.sum(dens))


def _require_free(params: Params):
    if params.case != FREE:
        raise ValueError(f"free-excited routine called with case={params.case!r}")


def _amplitude(params: Params, k: np.ndarray) -> np.ndarray:
    w, d, s = params.trap_ratio, params.detuning, params.drive
    shift = math.sqrt(2.0) * params.eta
    num = np.pi**-0.25 * np.exp(-0.5 * (k - shift) ** 2)
    return -s * num / ((w * k * k - 2.0 * d) - 1.0j)


def _resonant_peaks(params: Params):
    if params.detuning > 0.0:
        kp = math.sqrt(2.0 * params.detuning / params.trap_ratio)
        return [-kp, kp]
    return []


def steady_state_k(params: Params, n_points: int = 2001, k_max: float | None = None,
                   max_doublings: int = 8) -> MomentumState:
    """Quasi-steady excited amplitude on an adaptively refined k~ grid.

    The grid is widened until the rate integrand at the edge is below
    GRID_EDGE_TOL of its peak and refined until the norm moves by less
    than GRID_REFINE_TOL on doubling.
    """
    _require_free(params)
    if k_max is None:
        k_max = 6.0 + math.sqrt(2.0) * params.eta
        if params.detuning > 0.0:
            k_max += math.sqrt(2.0 * params.detuning / params.trap_ratio)

    def build(npts, kmax):
        grid = np.linspace(-kmax, kmax, npts)
        amps = _amplitude(params, grid)
        wts = np.full(npts, grid[1] - grid[0])
        wts[0] = wts[-1] = 0.5 * (grid[1] - grid[0])
        return MomentumState(grid=grid, amps=amps, weights=wts)

    # widen until the edge is dead
    dens_peak = None
    for _ in range(16):
        st = build(n_points, k_max)
        dens = np.abs(st.amps) ** 2
        dens_peak = dens.max()
        if dens[0] < GRID_EDGE_TOL * dens_peak and dens[-1] < GRID_EDGE_TOL * dens_peak:
            break
        k_max *= 1.5
    else:
        raise QuadratureError("momentum grid failed to contain the state")
    prev = st.norm_sq()
    for _ in range(max_doublings):
        n_points = 2 * n_points - 1
        st = build(n_points, k_max)
        cur = st.norm_sq()
        if abs(cur - prev) <= GRID_REFINE_TOL * prev:
            return st
        prev = cur
    raise QuadratureError("momentum grid did not converge under refinement")


def total_rate(params: Params, tol: float = 1e-8) -> float:
    """Total rate / ideal rate by adaptive quadrature of the momentum integrand."""
    _require_free(params)
    w, d = params.trap_ratio, params.detuning
    shift = math.sqrt(2.0) * params.eta

    def f(k):
        return math.exp(-((k - shift) ** 2)) / math.sqrt(math.pi) / (
            (w * k * k - 2.0 * d) ** 2 + 1.0
        )

    return float(integrate_line(f, tol=tol, peaks=_resonant_peaks(params)).value)


def elastic_rate(params: Params, tol: float = 1e-8) -> float:
    """Elastic rate / ideal rate.

    For eta = 0 this is |<ground | psi_e>|^2 in closed overlap form; with a
    finite Lamb-Dicke parameter the emitted photon's projected kick shifts
    the overlap and the circular-dipole angular average is taken.
    """
    _require_free(params)
    w, d = params.trap_ratio, params.detuning
    peaks = _resonant_peaks(params)
    if params.eta == 0.0:

        def fre(k):
            big = w * k * k - 2.0 * d
            return math.exp(-(k * k)) * big / (big * big + 1.0)

        def fim(k):
            big = w * k * k - 2.0 * d
            return math.exp(-(k * k)) / (big * big + 1.0)

        re = integrate_line(fre, tol=tol, peaks=peaks).value
        im = integrate_line(fim, tol=tol, peaks=peaks).value
        return float(re * re + im * im) / np.pi

    st = steady_state_k(params)
    u, wu = gauss_legendre(48)
    shift = math.sqrt(2.0) * params.eta
    overlaps = np.empty(u.size, dtype=complex)
    for j, uj in enumerate(u):
        ground = fock_momentum_wavefunction(0, st.grid - shift * uj)
        overlaps[j] = np.sum(st.weights * st.amps * ground)
    weight = 0.375 * (1.0 + u * u)
    return float(np.sum(wu * weight * np.abs(overlaps) ** 2)) / params.drive**2


def asymptotic_rates(params: Params, branch: Branch) -> RateResult:
    """Closed-form rate approximations.

    SMALL_TRAP: quadratic expansions in trap_ratio, with the linear-in-
    detuning asymmetry term; valid for trap_ratio << 1 and |detuning| not
    large.  LARGE_TRAP: the saddle evaluations for trap_ratio >> 1 (the
    elastic one only at zero detuning, where its subleading terms
    1 - sqrt(8/pi) w^-1/2 + (4/pi)/w are an asymptotic series).
    """
    _require_free(params)
    w, d = params.trap_ratio, params.detuning
    lor = static_rate(d)
    if branch is Branch.SMALL_TRAP:
        total = lor * (1.0 + 2.0 * d * w * lor - 0.75 * w * w * lor)
        # elastic amplitude expansion |1 - (w/2) z + (3/4) w^2 z^2|^2 with
        # z = 1/(-2d - i)
        z = 1.0 / complex(-2.0 * d, -1.0)
        bracket = 1.0 - 0.5 * w * z + 0.75 * w * w * z * z
        elastic = lor * float(abs(bracket) ** 2)
        return RateResult(total=total, elastic=elastic)
    if branch is Branch.LARGE_TRAP:
        root = math.sqrt(4.0 * d * d + 1.0)
        total = math.sqrt(np.pi / (2.0 * w)) * math.sqrt(root + 2.0 * d) / root
        if d > 0.0:
            total *= math.exp(-2.0 * d / w)
        elastic = (np.pi / w) * (1.0 - math.sqrt(8.0 / np.pi) / math.sqrt(w) + (4.0 / np.pi) / w)
        return RateResult(total=total, elastic=max(elastic, 0.0))
    raise ValueError(f"unknown branch {branch!r}")


def optimal_detuning(params: Params, xtol: float = 1e-4) -> float:
    """Detuning that maximizes the total rate, by golden-section search.

    The optimum sits at trap_ratio/4 for shallow traps and saturates near
    0.28 linewidths for deep ones, so [0, 0.6] always brackets it.
    """
    _require_free(params)
    def f(d):
        return total_rate(Params(trap_ratio=params.trap_ratio, detuning=d,
                                 drive=params.drive, eta=params.eta, case=FREE))
    x, _ = golden_section_max(f, 0.0, 0.6, xtol=xtol)
    return float(x)


def heating_rate(params: Params, n_max: int = 64, tol: float = 1e-6,
                 max_doublings: int = 8) -> float:
    """Normalized phonon-increase rate (1/R_sc) d<n>/dt = <n> of the excited state.

    Projects the steady momentum amplitude onto oscillator eigenfunctions and
    sums n |<n|psi>|^2 / |<psi>|^2, doubling the Fock cutoff until the
    n-weighted tail is negligible.  Odd levels stay empty by parity.
    """
    _require_free(params)
    if params.eta != 0.0:
        raise ValueError("excess-heating rate is defined for eta = 0")
    st = steady_state_k(params, n_points=4001)
    norm = st.norm_sq()
    for _ in range(max_doublings + 1):
        a = project_onto_fock(st.grid, st.weights, st.amps, n_max)
        pops = np.abs(a) ** 2
        captured = pops.sum()
        nsum = float(np.dot(np.arange(n_max + 1), pops))
        tail_weight = n_max * max(norm - captured, 0.0)
        if captured >= (1.0 - tol) * norm and tail_weight <= tol * max(nsum, norm):
            return nsum / captured
        n_max *= 2
    raise TruncationError(
        f"Fock projection of the free steady state did not converge by n_max={n_max}"
    )


def heating_estimate(params: Params) -> float:
    """Ballistic estimate: spread of a free Gaussian over two lifetimes.

    (trap_ratio * t_avg)^2 / 4 at t_avg = 2 gives trap_ratio^2 exactly.
    """
    return params.trap_ratio**2


def recoil_crossover(eta: float) -> float:
    """Trap ratio where excess heating overtakes recoil: sqrt(7/5) eta."""
    return math.sqrt(1.4) * eta
