"""Slope and curve fits used to extract scaling laws from computed data."""

import numpy as np
from scipy.optimize import curve_fit


def fit_loglog_slope(xs, ys):
    """Least-squares slope of log(y) vs log(x).

    Returns ``(slope, stderr)``.  Requires at least 4 strictly positive
    samples and non-degenerate abscissae.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 4:
        raise ValueError("need at least 4 points for a slope fit")
    if np.any(ys <= 0.0) or np.any(xs <= 0.0):
        raise ValueError("log-log fit requires positive data")
    u = np.log(xs)
    v = np.log(ys)
    if np.ptp(u) == 0.0:
        raise ValueError("degenerate abscissae")
    du = u - u.mean()
    slope = np.dot(du, v - v.mean()) / np.dot(du, du)
    resid = v - (v.mean() + slope * du)
    dof = max(1, xs.size - 2)
    stderr = np.sqrt(np.dot(resid, resid) / dof / np.dot(du, du))
    return float(slope), float(stderr)


def fit_exponent_with_offset(ts, ys):
    """Fit ``y = A exp(lam t) + B`` and return ``(lam, stderr)``.

    A growing rate that relaxes onto an exponential from below carries an
    additive constant; fitting log(y) directly would bias the exponent, so
    the offset is a free parameter.  Initial guess from the slope of
    log(first differences), which is exact for this model.
    """
    ts = np.asarray(ts, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if ts.size < 5:
        raise ValueError("need at least 5 points for an exponent fit")
    dy = np.diff(ys)
    if np.any(dy <= 0.0):
        lam0 = max(1e-3, np.polyfit(ts, np.log(np.abs(ys) + 1e-300), 1)[0])
    else:
        lam0 = np.polyfit(0.5 * (ts[1:] + ts[:-1]), np.log(dy), 1)[0]
    a0 = ys[-1] / np.exp(lam0 * ts[-1])

    def model(t, amp, lam, off):
        return amp * np.exp(lam * t) + off

    popt, pcov = curve_fit(model, ts, ys, p0=[a0, lam0, 0.0], maxfev=40000)
    return float(popt[1]), float(np.sqrt(pcov[1, 1]))


def fit_lorentzian_halfwidth(ds, ys):
    """Fit ``y = P / (1 + (2 d / fw)^2)`` and return ``(halfwidth, peak)``."""
    ds = np.asarray(ds, dtype=float)
    ys = np.asarray(ys, dtype=float)

    def model(d, peak, fw):
        return peak / (1.0 + (2.0 * d / fw) ** 2)

    popt, _ = curve_fit(model, ds, ys, p0=[ys.max(), 2.0 * (abs(ds).max() / 4 + 0.5)],
                        maxfev=40000)
    return float(abs(popt[1]) / 2.0), float(popt[0])


def richardson_quadratic_coefficient(f, h: float):
    """Second-order coefficient of ``1 - f`` at 0, Richardson-extrapolated.

    For f(x) = 1 - c x^2 + O(x^4) evaluated at x=h and x=h/2, eliminates
    the quartic error term.
    """
    c1 = (1.0 - f(h)) / h**2
    c2 = (1.0 - f(h / 2.0)) / (h / 2.0) ** 2
    return (4.0 * c2 - c1) / 3.0
