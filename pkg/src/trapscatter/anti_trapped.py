"""Anti-trapped excited state with inverted frequency equal to the trap's.

The inverted potential squeezes the vacuum, populating only even number
states of the ground trap.  Amplitudes are time integrals of the squeezed
profile against the drive/decay envelope; their steady tails follow a
power law n^-(1 + 1/(2 trap_ratio)), so the first heating moment diverges
once trap_ratio >= 1/2 and the phonon-increase rate then grows
exponentially, exp[(2 trap_ratio - 1) t].
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MaxPanelsError, TruncationError
from .fock import PARITY_EVEN, FockAmplitudes
from .numerics import (
    fit_exponent_with_offset,
    gauss_legendre,
    upper_incomplete_gamma,
    upper_incomplete_gamma_regularized,
    upper_incomplete_gamma_vec,
)
from .numerics import _kernels
from .params import ANTI, Params, RateResult

#: default evaluation time for steady-state quantities, in inverse linewidths
STEADY_TIME = 13.0

_N_START = 256
_N_CAP = 1 << 14
_QUAD_ORDER = 12


@dataclass(frozen=True)
class HeatingSeries:
    """Instantaneous normalized phonon-increase rate on a time grid."""

    times: np.ndarray
    rate: np.ndarray
    fitted_exponent: float | None
    converged: bool = True


class HeatingEstimate(NamedTuple):
    value: float
    recoil_crossover: float


def _require_anti(params: Params):
    if params.case != ANTI:
        raise ValueError(f"anti-trapped routine called with case={params.case!r}")
    if not math.isclose(params.inv_ratio, params.trap_ratio, rel_tol=1e-12):
        raise ValueError(
            "Fock-basis route needs inv_ratio == trap_ratio; use the "
            "momentum-space propagator for unequal strengths"
        )


def _time_quadrature(params: Params, t: float, refine: int = 0):
    """Panel nodes/weights resolving drive oscillation and total decay."""
    w, d = params.trap_ratio, params.detuning
    decay = 0.5 * (1.0 + w)  # emission + squeeze-profile falloff
    h = min(0.25, math.pi / (4.0 * abs(d) + 1.0), 1.0 / (4.0 * decay))
    h /= 2.0**refine
    t_cut = min(t, 80.0 / (1.0 + w) if w >= 0.5 else t)
    t_cut = min(t_cut, t)
    n_panels = max(1, int(math.ceil(t_cut / h)))
    x, wts = gauss_legendre(_QUAD_ORDER)
    edges = np.linspace(0.0, t_cut, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid[:, None] + half * x[None, :]).ravel()
    weights = np.broadcast_to(half * wts, (n_panels, x.size)).ravel()
    return nodes, weights


def _even_amp_factors(n_half: int) -> np.ndarray:
    """g_n = sqrt((2n)!)/(2^n n!) by the overflow-free ratio recurrence."""
    g = np.empty(n_half + 1)
    g[0] = 1.0
    for n in range(n_half):
        g[n + 1] = g[n] * math.sqrt((2 * n + 1) / (2.0 * n + 2.0))
    return g


def _profile(params: Params, t: float, n_half: int, refine: int = 0) -> np.ndarray:
    """I_n = int_0^t e^{(i d - 1/2) T} tanh(w T)^n / sqrt(cosh(w T)) dT."""
    w, d = params.trap_ratio, params.detuning
    nodes, weights = _time_quadrature(params, t, refine)
    th = np.tanh(w * nodes)
    base = weights * np.exp((1j * d - 0.5) * nodes) / np.sqrt(np.cosh(w * nodes))
    return _kernels.squeeze_profile(
        np.ascontiguousarray(th), np.ascontiguousarray(base), n_half + 1
    )


def amplitudes_t(params: Params, t: float, n_max: int | None = None,
                 tol: float = 1e-8, quad_tol: float = 1e-9) -> FockAmplitudes:
    """Excited amplitudes c_{2n}(t), photon kick neglected.

    Dense vector indexed by phonon number with zero odd entries.  The even
    cutoff grows adaptively until the last retained state holds less than
    ``tol`` of the norm; for trap_ratio >= 1/2 the steady tail is a shallow
    power law, so demand only what the downstream sum plus analytic tail
    needs.  Raises :class:`TruncationError` when the cap (or a caller-fixed
    n_max) cannot satisfy ``tol``.
    """
    _require_anti(params)
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        n = 2 if n_max is None else n_max
        return FockAmplitudes(np.zeros(n + 1, dtype=complex), parity=PARITY_EVEN)

    fixed = n_max is not None
    n_half = (n_max // 2) if fixed else _N_START
    while True:
        prof = _profile(params, t, n_half)
        prof2 = _profile(params, t, n_half, refine=1)
        if np.max(np.abs(prof2 - prof)) > quad_tol * (1.0 + np.max(np.abs(prof2))):
            prof = _profile(params, t, n_half, refine=2)
            if np.max(np.abs(prof - prof2)) > quad_tol * (1.0 + np.max(np.abs(prof))):
                raise MaxPanelsError("amplitude time quadrature failed to converge")
        else:
            prof = prof2
        ns = np.arange(n_half + 1)
        c_half = 0.5 * params.drive * 1j**ns * _even_amp_factors(n_half) * prof
        pops = np.abs(c_half) ** 2
        tail = pops[-1] / pops.sum()
        if tail <= tol:
            break
        if fixed or 2 * n_half >= _N_CAP:
            raise TruncationError(
                f"anti-trapped amplitude tail {tail:.2e} exceeds tol={tol:.2e} "
                f"at phonon cutoff {2 * n_half}"
            )
        n_half *= 2
    amps = np.zeros(2 * n_half + 1, dtype=complex)
    amps[::2] = c_half
    return FockAmplitudes(amps=amps, parity=PARITY_EVEN)


def _log_tail_coefficient(params: Params) -> float:
    """log of the steady power-law prefactor of |c_{2n}|^2."""
    w, s = params.trap_ratio, params.drive
    return (
        2.0 * math.log(s)
        - math.log(8.0 * w * w)
        - 0.5 * math.log(2.0 * math.pi)
        - math.log(2.0) / (2.0 * w)
        + 2.0 * math.lgamma(0.25 + 1.0 / (4.0 * w))
    )


def tail_population(params: Params, n: int) -> float:
    """Steady-state |c_{2n}|^2 for n >> 1 from the saddle-point closed form."""
    _require_anti(params)
    if n < 20:
        raise ValueError("tail form is only claimed for n >= 20")
    w = params.trap_ratio
    logp = _log_tail_coefficient(params) - (1.0 + 1.0 / (2.0 * w)) * math.log(n)
    return math.exp(logp) if logp > -700.0 else 0.0


def amplitudes_gamma_form(params: Params, t: float, n: int) -> float:
    """|c_{2n}(t)|^2 from the incomplete-gamma closed form (n >> 1).

    Time enters only through the cutoff argument 2n e^{-2wt}; at t -> inf
    this reduces to :func:`tail_population`.
    """
    _require_anti(params)
    if n < 1:
        raise ValueError("n must be at least 1")
    w, s = params.trap_ratio, params.drive
    a = 0.25 + 1.0 / (4.0 * w)
    x = 2.0 * n * math.exp(-2.0 * w * t)
    g = upper_incomplete_gamma(a, x)
    if g <= 0.0:
        return 0.0
    logp = (
        2.0 * math.log(s)
        - math.log(4.0 * w * w)
        - 0.5 * math.log(2.0 * math.pi)
        + 2.0 * math.log(g)
        - (1.0 + 1.0 / (2.0 * w)) * math.log(2.0 * n)
    )
    return math.exp(logp) if logp > -700.0 else 0.0


def _tail_time_factor(params: Params, t: float, n_from: int) -> float:
    """How much of the steady tail beyond n_from has been built by time t.

    The gamma-form cutoff at the tail's lower edge, squared as the
    populations are; tends to 1 as t -> inf.
    """
    w = params.trap_ratio
    a = 0.25 + 1.0 / (4.0 * w)
    x = 2.0 * n_from * math.exp(-2.0 * w * t)
    return upper_incomplete_gamma_regularized(a, x) ** 2


def _analytic_tail_sums(params: Params, n_from: int):
    """Integral estimates of sum |c|^2 and sum 2n |c|^2 beyond phonon 2*n_from."""
    w = params.trap_ratio
    ex = 1.0 + 1.0 / (2.0 * w)
    logA = _log_tail_coefficient(params)
    log_pop = logA + math.log(2.0 * w) - math.log(n_from) / (2.0 * w)
    pop = math.exp(log_pop) if log_pop > -700.0 else 0.0
    if ex > 2.0:
        log_heat = logA + math.log(2.0 / (ex - 2.0)) + (2.0 - ex) * math.log(n_from)
        heat = math.exp(log_heat) if log_heat > -700.0 else 0.0
    else:
        heat = math.inf
    return pop, heat


def elastic_population(params: Params, t: float = STEADY_TIME) -> float:
    """|c_0(t)|^2 alone, without building the whole ladder."""
    _require_anti(params)
    prof = _profile(params, t, 0, refine=1)
    return float(abs(0.5 * params.drive * prof[0]) ** 2)


def steady_rates(params: Params, t: float = STEADY_TIME, n_max: int | None = None,
                 include_analytic_tail: bool = True) -> RateResult:
    """Total and elastic fractions of the ideal rate at evaluation time t.

    The elastic channel is the surviving motional-vacuum amplitude |c_0|^2.
    Below trap_ratio 1/2 the ladder truncates cleanly; above, the
    populations fall off as a shallow power law and the sum beyond the
    retained ladder is added from the analytic tail (which dominates the
    total at large trap_ratio, exactly as the steady population does).
    """
    _require_anti(params)
    if params.trap_ratio < 0.5:
        state = amplitudes_t(params, t, n_max=n_max, tol=1e-8)
    else:
        state = amplitudes_t(params, t, n_max=n_max or _N_CAP // 2, tol=1.0)
    pops = state.populations()
    n_half = (len(state.amps) - 1) // 2
    total = float(pops.sum())
    if include_analytic_tail:
        tail_pop, _ = _analytic_tail_sums(params, n_half)
        total += tail_pop * _tail_time_factor(params, t, n_half)
    s2 = params.drive**2
    return RateResult(total=total / s2, elastic=float(pops[0]) / s2)


def _heating_integral(params: Params, t: float) -> float:
    """I(t) = int_{2 exp(-2wt)}^inf m^{-1/(2w)} Gamma(a, m)^2 dm by graded panels."""
    w = params.trap_ratio
    a = 0.25 + 1.0 / (4.0 * w)
    p = 1.0 / (2.0 * w)
    lo = 2.0 * math.exp(-2.0 * w * t)
    x, wts = gauss_legendre(24)

    def chunk(aa, bb):
        mid = 0.5 * (aa + bb)
        half = 0.5 * (bb - aa)
        m = mid + half * x
        g = upper_incomplete_gamma_vec(a, m)
        return float(half * np.sum(wts * m**-p * g * g))

    total = 0.0
    # geometric grading absorbs the integrable m^-p edge
    edges = [lo]
    while edges[-1] < 1.0:
        edges.append(min(1.0, edges[-1] * 4.0))
    for aa, bb in zip(edges[:-1], edges[1:]):
        total += chunk(aa, bb)
    b = 1.0
    while b < 80.0:
        total += chunk(b, b + 4.0)
        b += 4.0
    return total


def heating_series(params: Params, times) -> HeatingSeries:
    """Normalized phonon-increase rate (1/R_sc) d<n>/dt over a time grid.

    Below the critical ratio 1/2 the rate settles onto a plateau computed
    from the ladder sums (plus analytic tails).  At or above it, the
    n-integral of the gamma-form populations gives a rate growing as
    exp[(2 trap_ratio - 1) t]; the reported exponent comes from an
    offset-exponential fit on the window t >= max(5, 2/trap_ratio), since
    the approach to the asymptote leaves an additive constant.
    """
    _require_anti(params)
    times = np.asarray(times, dtype=float)
    if times.size == 0 or np.any(np.diff(times) <= 0.0) or times[0] < 0.0:
        raise ValueError("times must be positive and strictly increasing")
    w = params.trap_ratio
    pop = steady_rates(params).total * params.drive**2
    converged = True
    if w < 0.5:
        rates = np.empty(times.size)
        for i, t in enumerate(times):
            try:
                state = amplitudes_t(params, t, tol=1e-8)
            except TruncationError:
                state = amplitudes_t(params, t, n_max=_N_CAP, tol=1.0)
                converged = False
            pops = state.populations()
            n_half = (len(state.amps) - 1) // 2
            heat = float(np.dot(np.arange(len(pops)), pops))
            _, tail_heat = _analytic_tail_sums(params, max(n_half, 20))
            tail_heat *= _tail_time_factor(params, t, max(n_half, 20))
            rates[i] = (heat + tail_heat) / pop
        return HeatingSeries(times=times, rate=rates, fitted_exponent=None,
                             converged=converged)

    b = params.drive**2 / (4.0 * w * w * math.sqrt(2.0 * math.pi))
    rates = np.array(
        [0.5 * b * math.exp((2.0 * w - 1.0) * t) * _heating_integral(params, t)
         for t in times]
    ) / pop
    t_lo = max(5.0, 2.0 / w)
    sel = times >= t_lo
    if sel.sum() >= 5:
        lam, _ = fit_exponent_with_offset(times[sel], rates[sel])
    else:
        lam, _ = fit_exponent_with_offset(times, rates)
    return HeatingSeries(times=times, rate=rates, fitted_exponent=float(lam),
                         converged=converged)


def heating_estimate(params: Params) -> HeatingEstimate:
    """Ballistic phonon estimate over two lifetimes, plus the recoil crossover.

    The inverted potential doubles variances as cosh(2 w t); at t_avg = 2
    that is (cosh(4w) - 1)/2 phonons, about 4 w^2 for small w.  Excess
    heating matches recoil when trap_ratio ~ sqrt(7/20) eta.
    """
    _require_anti(params)
    w = params.trap_ratio
    value = 0.5 * (math.cosh(4.0 * w) - 1.0)
    return HeatingEstimate(value=value, recoil_crossover=math.sqrt(0.35) * params.eta)
