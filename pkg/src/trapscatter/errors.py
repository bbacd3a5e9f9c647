"""Shared exception and warning types."""


class TrapScatterError(RuntimeError):
    """Base class for numerical failures in this package."""


class TruncationError(TrapScatterError):
    """A Fock-space truncation left too much population in the tail."""


class QuadratureError(TrapScatterError):
    """A quadrature did not reach the requested tolerance."""


class MaxSubdivisionsError(QuadratureError):
    """Adaptive line quadrature hit its subdivision limit."""


class MaxPanelsError(QuadratureError):
    """Panelled oscillatory quadrature hit its refinement limit."""


class RegimeWarning(UserWarning):
    """Parameters outside the weak-driving / early-time regime.

    The computation proceeds anyway; rates simply lose their quantitative
    meaning once the drive is strong enough that quantum jumps are likely.
    """
