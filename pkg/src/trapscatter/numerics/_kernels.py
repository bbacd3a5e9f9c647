"""Hot numerical kernels, in numba and pure-numpy flavours.

Every public name here has two implementations with identical contracts:
``<name>_numba`` (compiled when numba is active) and ``<name>_numpy``.
The unsuffixed alias points at the build selected by
:mod:`trapscatter.numerics.backend`.  The benchmark suite imports both
flavours explicitly.
"""

import math

import numpy as np

from .backend import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# upper incomplete gamma, unnormalized:  Gamma(a, x) = int_x^inf s^(a-1) e^-s ds
# Series for the lower function when x < a+1, Lentz continued fraction above.
# ---------------------------------------------------------------------------

_EPS = 2.220446049250313e-16
_TINY = 1e-300


def _gamma_upper_scalar(a, x):
    if x == 0.0:
        return math.exp(math.lgamma(a)) if a < 170.0 else math.inf
    lg = math.lgamma(a)
    if x < a + 1.0:
        # lower series, then complement
        ap = a
        term = 1.0 / a
        total = term
        for _ in range(10000):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-17:
                break
        p = total * math.exp(-x + a * math.log(x) - lg)
        return math.exp(lg) * (1.0 - p)
    # Lentz's method for the continued fraction of Q(a, x)
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x + a * math.log(x)) * h


def _gamma_upper_reg_scalar(a, x):
    """Regularized Q(a, x) = Gamma(a, x) / Gamma(a); safe for large a."""
    if x == 0.0:
        return 1.0
    lg = math.lgamma(a)
    if x < a + 1.0:
        ap = a
        term = 1.0 / a
        total = term
        for _ in range(10000):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-17:
                break
        return 1.0 - total * math.exp(-x + a * math.log(x) - lg)
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    arg = -x + a * math.log(x) - lg
    return math.exp(arg) * h if arg > -700.0 else 0.0


def _gamma_upper_vec_py(a, xs, out):
    for i in range(xs.shape[0]):
        out[i] = _gamma_upper_scalar(a, xs[i])
    return out


gamma_upper_numpy = _gamma_upper_scalar
gamma_upper_reg_numpy = _gamma_upper_reg_scalar
gamma_upper_vec_numpy = _gamma_upper_vec_py

if USE_NUMBA:
    gamma_upper_numba = njit(_gamma_upper_scalar)
    gamma_upper_reg_numba = njit(_gamma_upper_reg_scalar)

    @njit
    def gamma_upper_vec_numba(a, xs, out):
        for i in range(xs.shape[0]):
            out[i] = gamma_upper_numba(a, xs[i])
        return out

else:  # pragma: no cover - trivially the same object
    gamma_upper_numba = _gamma_upper_scalar
    gamma_upper_reg_numba = _gamma_upper_reg_scalar
    gamma_upper_vec_numba = _gamma_upper_vec_py

gamma_upper = gamma_upper_numba if USE_NUMBA else gamma_upper_numpy
gamma_upper_reg = gamma_upper_reg_numba if USE_NUMBA else gamma_upper_reg_numpy
gamma_upper_vec = gamma_upper_vec_numba if USE_NUMBA else gamma_upper_vec_numpy


# ---------------------------------------------------------------------------
# squeeze-state time integrals:  c[n] = sum_j base[j] * tanh_j^n
# base carries quadrature weight, drive envelope and 1/sqrt(cosh); tanh_j in
# (0, 1) so the running power never overflows.
# ---------------------------------------------------------------------------


def squeeze_profile_numpy(tanh_j, base_j, n_count):
    out = np.zeros(n_count, dtype=np.complex128)
    power = np.ones_like(tanh_j)
    for n in range(n_count):
        out[n] = np.dot(base_j, power)
        power = power * tanh_j
    return out


if USE_NUMBA:

    @njit
    def squeeze_profile_numba(tanh_j, base_j, n_count):
        out = np.zeros(n_count, dtype=np.complex128)
        for j in range(tanh_j.shape[0]):
            b = base_j[j]
            t = tanh_j[j]
            p = 1.0
            for n in range(n_count):
                out[n] += b * p
                p *= t
        return out

else:
    squeeze_profile_numba = squeeze_profile_numpy

squeeze_profile = squeeze_profile_numba if USE_NUMBA else squeeze_profile_numpy


# ---------------------------------------------------------------------------
# time-evolved ground-state Gaussian in momentum space (dimensionless k,
# normalized to the ground trap), and the driven steady-state amplitude
#   psi(k) = -i/2 * int_0^t exp[(i*d - 1/2) T] g(k, T) dT
# integrated adaptively per k.  All frequencies in units of the linewidth.
# ---------------------------------------------------------------------------


def _evolved_gaussian_scalar(k, T, inv, w):
    pref = math.pi ** -0.25
    if inv == 0.0:
        return pref * math.exp(-0.5 * k * k) * np.exp(complex(0.0, -0.5 * w * k * k * T))
    rho = inv / w
    ph = inv * T
    ch = math.cosh(ph)
    sh = math.sinh(ph)
    norm = pref / np.sqrt(complex(ch, -rho * sh))
    expo = (k * k / (2.0 * rho)) * complex(sh, -rho * ch) / complex(rho * sh, ch)
    return norm * np.exp(expo)


def _steady_amp_one_py(k, w, inv, d, t, tol_abs, xg, wg, max_depth=48):
    ng = xg.shape[0]
    alpha = complex(-0.5, d)

    def panel(a, b):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        acc = 0.0 + 0.0j
        for i in range(ng):
            T = mid + half * xg[i]
            acc += wg[i] * np.exp(alpha * T) * _evolved_gaussian_scalar(k, T, inv, w)
        return acc * half

    # seed panels resolve the drive-detuning oscillation and the decay
    n0 = max(8, int(t * (1.0 + abs(d)) * 1.5))
    total = 0.0 + 0.0j
    stack = [(i * t / n0, (i + 1) * t / n0, panel(i * t / n0, (i + 1) * t / n0), 0)
             for i in range(n0)]
    while stack:
        a, b, coarse, depth = stack.pop()
        m = 0.5 * (a + b)
        left = panel(a, m)
        right = panel(m, b)
        fine = left + right
        if abs(fine - coarse) <= tol_abs * (b - a) / t or depth >= max_depth:
            total += fine
        else:
            stack.append((a, m, left, depth + 1))
            stack.append((m, b, right, depth + 1))
    return -0.5j * total


def steady_amp_grid_numpy(k_arr, w, inv, d, t, tol_abs, xg, wg):
    out = np.empty(k_arr.shape[0], dtype=np.complex128)
    for i in range(k_arr.shape[0]):
        out[i] = _steady_amp_one_py(k_arr[i], w, inv, d, t, tol_abs, xg, wg)
    return out


if USE_NUMBA:
    _evolved_gaussian_nb = njit(_evolved_gaussian_scalar)

    @njit
    def _panel_nb(k, w, inv, alpha, a, b, xg, wg):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        acc = 0.0 + 0.0j
        for i in range(xg.shape[0]):
            T = mid + half * xg[i]
            acc += wg[i] * np.exp(alpha * T) * _evolved_gaussian_nb(k, T, inv, w)
        return acc * half

    @njit
    def _steady_amp_one_nb(k, w, inv, d, t, tol_abs, xg, wg):
        alpha = complex(-0.5, d)
        n0 = max(8, int(t * (1.0 + abs(d)) * 1.5))
        max_depth = 48
        cap = 4096
        st_a = np.empty(cap)
        st_b = np.empty(cap)
        st_v = np.empty(cap, dtype=np.complex128)
        st_d = np.empty(cap, dtype=np.int64)
        top = 0
        for i in range(n0):
            a = i * t / n0
            b = (i + 1) * t / n0
            st_a[top] = a
            st_b[top] = b
            st_v[top] = _panel_nb(k, w, inv, alpha, a, b, xg, wg)
            st_d[top] = 0
            top += 1
        total = 0.0 + 0.0j
        while top > 0:
            top -= 1
            a = st_a[top]
            b = st_b[top]
            coarse = st_v[top]
            depth = st_d[top]
            m = 0.5 * (a + b)
            left = _panel_nb(k, w, inv, alpha, a, m, xg, wg)
            right = _panel_nb(k, w, inv, alpha, m, b, xg, wg)
            fine = left + right
            if abs(fine - coarse) <= tol_abs * (b - a) / t or depth >= 48 or top + 2 >= cap:
                total += fine
            else:
                st_a[top] = a
                st_b[top] = m
                st_v[top] = left
                st_d[top] = depth + 1
                top += 1
                st_a[top] = m
                st_b[top] = b
                st_v[top] = right
                st_d[top] = depth + 1
                top += 1
        return -0.5j * total

    @njit
    def steady_amp_grid_numba(k_arr, w, inv, d, t, tol_abs, xg, wg):
        out = np.empty(k_arr.shape[0], dtype=np.complex128)
        for i in range(k_arr.shape[0]):
            out[i] = _steady_amp_one_nb(k_arr[i], w, inv, d, t, tol_abs, xg, wg)
        return out

else:
    steady_amp_grid_numba = steady_amp_grid_numpy

steady_amp_grid = steady_amp_grid_numba if USE_NUMBA else steady_amp_grid_numpy


# ---------------------------------------------------------------------------
# projection of a momentum-space amplitude onto harmonic-oscillator momentum
# wavefunctions phi_n (orthonormal Hermite functions), via the stable upward
# recurrence  phi_{n+1} = k sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1}.
# ---------------------------------------------------------------------------


def hermite_project_numpy(k_arr, weights, psi, n_max):
    out = np.empty(n_max + 1, dtype=np.complex128)
    wpsi = weights * psi
    prev = np.pi ** -0.25 * np.exp(-0.5 * k_arr * k_arr)
    out[0] = np.dot(wpsi, prev)
    if n_max == 0:
        return out
    cur = np.sqrt(2.0) * k_arr * prev
    out[1] = np.dot(wpsi, cur)
    for n in range(1, n_max):
        nxt = np.sqrt(2.0 / (n + 1)) * k_arr * cur - np.sqrt(n / (n + 1.0)) * prev
        out[n + 1] = np.dot(wpsi, nxt)
        prev, cur = cur, nxt
    return out


if USE_NUMBA:

    @njit
    def hermite_project_numba(k_arr, weights, psi, n_max):
        m = k_arr.shape[0]
        out = np.zeros(n_max + 1, dtype=np.complex128)
        pref = np.pi ** -0.25
        for j in range(m):
            k = k_arr[j]
            wp = weights[j] * psi[j]
            prev = pref * math.exp(-0.5 * k * k)
            out[0] += wp * prev
            if n_max == 0:
                continue
            cur = math.sqrt(2.0) * k * prev
            out[1] += wp * cur
            for n in range(1, n_max):
                nxt = math.sqrt(2.0 / (n + 1)) * k * cur - math.sqrt(n / (n + 1.0)) * prev
                out[n + 1] += wp * nxt
                prev = cur
                cur = nxt
        return out

else:
    hermite_project_numba = hermite_project_numpy

hermite_project = hermite_project_numba if USE_NUMBA else hermite_project_numpy
