"""Near-resonant light scattering by a trapped two-level atom whose excited
state is equally trapped, free, or anti-trapped.

Units: the radiative linewidth is 1, hbar is 1, momenta are normalized to
the ground-trap spread.  Rates are fractions of the ideal static-atom rate
(drive^2 in these units) unless a function says otherwise.
"""

__version__ = "0.1.0"

from . import anti_trapped, equal_trap, fock, free_excited, numerics, propagator
from .errors import (
    MaxPanelsError,
    MaxSubdivisionsError,
    QuadratureError,
    RegimeWarning,
    TrapScatterError,
    TruncationError,
)
from .params import ANTI, CASES, EQUAL, FREE, Params, RateResult, r_ideal, static_rate

__all__ = [
    "ANTI",
    "CASES",
    "EQUAL",
    "FREE",
    "MaxPanelsError",
    "MaxSubdivisionsError",
    "Params",
    "QuadratureError",
    "RateResult",
    "RegimeWarning",
    "TrapScatterError",
    "TruncationError",
    "__version__",
    "anti_trapped",
    "equal_trap",
    "fock",
    "free_excited",
    "numerics",
    "propagator",
    "r_ideal",
    "static_rate",
]
