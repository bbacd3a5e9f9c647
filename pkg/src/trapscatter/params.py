"""Dimensionless parameter model and static-atom reference quantities.

All frequencies are measured in units of the radiative linewidth (the
linewidth itself is 1), times in inverse linewidths, and hbar = 1.  The
atomic mass never appears: it is absorbed into the Lamb-Dicke parameter
and the momentum normalization k~ = k (hbar / m omega_T)^(1/2).
"""

import warnings
from dataclasses import dataclass

from .errors import RegimeWarning

EQUAL = "equal"
FREE = "free"
ANTI = "anti"
CASES = (EQUAL, FREE, ANTI)

#: Rabi frequencies above this (in linewidth units) no longer produce a
#: quasi-steady state that is jump-free for a useful time window.
WEAK_DRIVE_LIMIT = 0.1


@dataclass(frozen=True)
class Params:
    """Physical inputs in linewidth units.

    trap_ratio   ground-trap frequency / linewidth
    detuning     (laser - atomic) frequency / linewidth
    drive        Rabi frequency / linewidth
    eta          Lamb-Dicke parameter of the ground trap
    case         excited-state potential: "equal", "free" or "anti"
    inv_ratio    inverted-potential frequency / linewidth (anti case only)
    """

    trap_ratio: float
    detuning: float = 0.0
    drive: float = 0.01
    eta: float = 0.0
    case: str = EQUAL
    inv_ratio: float | None = None

    def __post_init__(self):
        if self.trap_ratio <= 0.0:
            raise ValueError(f"trap_ratio must be positive, got {self.trap_ratio}")
        if self.drive <= 0.0:
            raise ValueError(f"drive must be positive, got {self.drive}")
        if self.eta < 0.0:
            raise ValueError(f"eta must be nonnegative, got {self.eta}")
        if self.case not in CASES:
            raise ValueError(f"case must be one of {CASES}, got {self.case!r}")
        if self.case == ANTI:
            if self.inv_ratio is None or self.inv_ratio <= 0.0:
                raise ValueError("anti-trapped case needs a positive inv_ratio")
        elif self.inv_ratio is not None:
            raise ValueError(f"inv_ratio is only meaningful for case={ANTI!r}")
        if not self.in_weak_drive_regime:
            warnings.warn(
                f"drive={self.drive} exceeds the weak-driving limit "
                f"{WEAK_DRIVE_LIMIT}; rates are out of regime",
                RegimeWarning,
                stacklevel=2,
            )

    @property
    def in_weak_drive_regime(self) -> bool:
        return self.drive <= WEAK_DRIVE_LIMIT


@dataclass(frozen=True)
class RateResult:
    """Total and elastic scattering rates as fractions of the ideal rate."""

    total: float
    elastic: float

    def __post_init__(self):
        if not (self.total >= 0.0 and self.elastic >= 0.0):
            raise ValueError(f"rates must be nonnegative: {self}")


def r_ideal(params: Params) -> float:
    """Resonant scattering rate of a motionless atom, in linewidth units.

    This is the normalization for every reported efficiency: a static atom
    driven on resonance scatters drive^2 photons per unit (1/linewidth).
    """
    return params.drive**2


def static_rate(detuning: float) -> float:
    """Lorentzian response of a motionless atom, as a fraction of ideal."""
    return 1.0 / (4.0 * detuning**2 + 1.0)
