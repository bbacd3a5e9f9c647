"""Equal (magic-wavelength) trapping of ground and excited states.

The excited motional ladder is driven only through the photon-kick matrix
elements, so the quasi-steady amplitudes come from a closed solve with the
atom pinned in the motional ground state.  All rates are reported as
fractions of the ideal static-atom rate unless stated otherwise.
"""

import numpy as np

from .errors import TruncationError
from .fock import displacement_column, emission_moment
from .numerics import gauss_legendre
from .params import EQUAL, Params, RateResult, r_ideal

#: stop extending the sideband sum when a term adds less than this, relatively
SIDEBAND_TOL = 1e-10

_ANGULAR_ORDER = 48


def _require_equal(params: Params):
    if params.case != EQUAL:
        raise ValueError(f"equal-trap routine called with case={params.case!r}")


def _amplitudes(params: Params, n_max: int) -> np.ndarray:
    """Quasi-steady excited amplitudes c_n' (absolute, includes the drive)."""
    w, d = params.trap_ratio, params.detuning
    col = displacement_column(n_max, params.eta)
    n = np.arange(n_max + 1)
    return -params.drive * col / ((2.0 * n * w - 2.0 * d) - 1.0j)


def _adaptive_n_max(params: Params, n_max) -> int:
    if n_max is not None:
        return int(n_max)
    # eta^2n / n! falloff: 64 states is already far past any physical eta
    eta = params.eta
    if eta == 0.0:
        return 0
    n = 8
    while n < 4096:
        pops = np.abs(_amplitudes(params, n)) ** 2
        if pops[-1] < SIDEBAND_TOL * pops.sum():
            return n
        n *= 2
    raise TruncationError(f"sideband ladder did not converge for eta={eta}")


def excited_populations(params: Params, n_max: int | None = None) -> np.ndarray:
    """|c_n'|^2 over the excited Fock ladder (absolute rates, drive included).

    Each level carries the photon-kick weight |<n'|e^{i eta X}|0>|^2 against
    a Lorentzian energy penalty at twice the sideband detuning.
    """
    _require_equal(params)
    n_max = _adaptive_n_max(params, n_max)
    pops = np.abs(_amplitudes(params, n_max)) ** 2
    if n_max > 0 and pops[-1] > SIDEBAND_TOL * pops.sum():
        raise TruncationError(
            f"excited populations truncated too early at n_max={n_max}"
        )
    return pops


def total_rate(params: Params, n_max: int | None = None) -> float:
    """Total scattering rate / ideal rate: the summed excited population."""
    return float(excited_populations(params, n_max).sum()) / r_ideal(params)


def total_rate_expansion(params: Params) -> float:
    """Two-sideband closed form, valid to O(eta^4) in the Lamb-Dicke regime."""
    _require_equal(params)
    w, d, eta = params.trap_ratio, params.detuning, params.eta
    carrier = 1.0 / (4.0 * d * d + 1.0)
    sideband = eta * eta / ((2.0 * w - 2.0 * d) ** 2 + 1.0)
    return (carrier + sideband) / (1.0 + eta * eta)


def elastic_rate(params: Params, n_max: int | None = None) -> float:
    """Elastic rate / ideal rate via the full emission-angle integral.

    The emitted photon's recoil projects the excited ladder back onto the
    motional ground state with a cos(theta)-scaled kick; the angular average
    uses the circular-dipole weight.
    """
    _require_equal(params)
    n_max = _adaptive_n_max(params, n_max)
    c = _amplitudes(params, n_max)
    if params.eta == 0.0:
        return float(abs(c[0]) ** 2) / r_ideal(params)
    u, wu = gauss_legendre(_ANGULAR_ORDER)
    amp = np.zeros(u.size, dtype=complex)
    for j, uj in enumerate(u):
        # <0| e^{-i eta u X} |n'> equals the symmetric element <n'|D(-i eta u)|0>
        back = displacement_column(n_max, -params.eta * uj)
        amp[j] = np.dot(back, c)
    weight = 0.375 * (1.0 + u * u)
    val = float(np.sum(wu * weight * np.abs(amp) ** 2))
    return val / r_ideal(params)


def elastic_rate_expansion(params: Params, n_max: int | None = None) -> float:
    """Lamb-Dicke closed form: total * (1 - 7/5 eta^2), for linewidth >> trap."""
    return total_rate(params, n_max) * (1.0 - 1.4 * params.eta**2)


def recoil_heating_rate(params: Params) -> float:
    """Phonons gained per unit time from photon recoil (linewidth units).

    Time independent in the early-time window; the 7/5 combines one part
    drive-side kick with 2/5 from the emission average of cos^2.
    """
    _require_equal(params)
    factor = 1.0 + emission_moment(2)  # = 7/5
    return factor * params.eta**2 * total_rate(params) * r_ideal(params)
