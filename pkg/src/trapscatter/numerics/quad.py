"""Quadrature helpers: whole-line adaptive integrals and panelled
integrals of decaying oscillatory functions.

Everything here is deterministic; repeated calls with identical inputs
return bit-identical results.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from ..errors import MaxPanelsError, MaxSubdivisionsError


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_error_estimate: float
    evaluations: int


@lru_cache(maxsize=32)
def gauss_legendre(n: int):
    """Nodes/weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


class _Counter:
    def __init__(self, f):
        self.f = f
        self.n = 0

    def __call__(self, x):
        self.n += 1
        return self.f(x)


def integrate_line(f, tol: float = 1e-10, peaks=None, max_subdivisions: int = 400) -> QuadResult:
    """Integrate ``f`` over the whole real line.

    ``peaks`` is an optional sequence of abscissae where the integrand is
    sharply structured (e.g. narrow resonances); the line is split there so
    the adaptive rule cannot step over them.  The integrand must decay
    integrably.
    """
    g = _Counter(f)
    peaks = sorted(set(float(p) for p in (peaks or []))) or None
    if peaks is None:
        val, err = integrate.quad(
            g, -np.inf, np.inf, epsabs=0.1 * tol, epsrel=0.1 * tol, limit=max_subdivisions
        )
    else:
        pad = 1.0 + 0.1 * (peaks[-1] - peaks[0])
        lo, hi = peaks[0] - pad, peaks[-1] + pad
        val, err = 0.0, 0.0
        v, e = integrate.quad(g, -np.inf, lo, epsabs=0.1 * tol, epsrel=0.1 * tol,
                              limit=max_subdivisions)
        val += v
        err += e
        cuts = [lo] + peaks + [hi]
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b <= a:
                continue
            v, e = integrate.quad(g, a, b, epsabs=0.1 * tol, epsrel=0.1 * tol,
                                  limit=max_subdivisions)
            val += v
            err += e
        v, e = integrate.quad(g, hi, np.inf, epsabs=0.1 * tol, epsrel=0.1 * tol,
                              limit=max_subdivisions)
        val += v
        err += e
    if not np.isfinite(val) or err > tol * max(1.0, abs(val)):
        raise MaxSubdivisionsError(
            f"line quadrature stalled: value={val!r}, error estimate={err!r}, tol={tol!r}"
        )
    return QuadResult(value=val, abs_error_estimate=err, evaluations=g.n)


def integrate_decaying_oscillatory(
    f,
    rate: float,
    freq: float,
    t_max: float,
    tol: float = 1e-10,
    order: int = 12,
    max_refinements: int = 12,
) -> QuadResult:
    """Integrate a complex-valued ``f`` on [0, t_max].

    Meant for integrands bounded by ``C exp(-rate*t)`` that oscillate at
    angular frequency ``freq``.  Fixed-order Gauss panels no longer than
    min(period/8, 1/(4*rate)) resolve both scales; panels are then halved
    until the value is stable to ``tol``.
    """
    if t_max <= 0.0:
        return QuadResult(0.0 + 0.0j, 0.0, 0)
    h = t_max
    if freq != 0.0:
        h = min(h, 2.0 * np.pi / abs(freq) / 8.0)
    if rate > 0.0:
        h = min(h, 1.0 / (4.0 * rate))
    n_panels = max(1, int(np.ceil(t_max / h)))
    x, wts = gauss_legendre(order)
    evals = 0
    prev = None
    for _ in range(max_refinements + 1):
        edges = np.linspace(0.0, t_max, n_panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1] - edges[0])
        nodes = (mid[:, None] + half * x[None, :]).ravel()
        vals = np.asarray(f(nodes), dtype=complex)
        evals += nodes.size
        value = half * np.sum(vals.reshape(n_panels, order) * wts[None, :])
        if prev is not None:
            err = abs(value - prev)
            if err <= tol * max(1.0, abs(value)):
                return QuadResult(value=value, abs_error_estimate=err, evaluations=evals)
        prev = value
        n_panels *= 2
    raise MaxPanelsError(
        f"oscillatory quadrature did not stabilize to tol={tol!r} "
        f"within {max_refinements} refinements"
    )


def golden_section_max(f, lo: float, hi: float, xtol: float = 1e-4):
    """Locate the maximum of a unimodal ``f`` on [lo, hi]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)
