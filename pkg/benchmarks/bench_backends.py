"""Timing comparison of the numba kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_backends.py
The library picks a backend at import via TRAPSCATTER_BACKEND; this script
imports both implementations directly, times representative workloads, and
checks they agree.
"""

import time

import numpy as np

from trapscatter.numerics import _kernels as K
from trapscatter.numerics.backend import HAVE_NUMBA
from trapscatter.numerics.quad import gauss_legendre


def timeit(fn, *args, repeat=3, warmup=1):
    for _ in range(warmup):
        out = fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def rel_dev(a, b):
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b))
    scale = np.max(np.abs(b)) or 1.0
    return float(np.max(np.abs(a - b)) / scale)


def bench_gamma():
    xs = np.geomspace(1e-6, 60.0, 20000)
    out = np.empty_like(xs)

    def run(impl):
        return impl(0.7917, xs, out.copy())

    t_np, v_np = timeit(run, K.gamma_upper_vec_numpy)
    t_nb, v_nb = timeit(run, K.gamma_upper_vec_numba)
    return "incomplete gamma (20k pts)", t_np, t_nb, rel_dev(v_nb, v_np)


def bench_squeeze():
    rng = np.random.default_rng(7)
    nodes = 4000
    tanh_j = np.tanh(np.linspace(1e-3, 20.0, nodes))
    base_j = (rng.standard_normal(nodes) + 1j * rng.standard_normal(nodes)) * np.exp(
        -0.05 * np.arange(nodes)
    )
    t_np, v_np = timeit(K.squeeze_profile_numpy, tanh_j, base_j, 4096)
    t_nb, v_nb = timeit(K.squeeze_profile_numba, tanh_j, base_j, 4096)
    return "squeeze profile (4k nodes x 4k states)", t_np, t_nb, rel_dev(v_nb, v_np)


def bench_steady_amp():
    xg, wg = gauss_legendre(10)
    k = np.ascontiguousarray(np.linspace(-20.0, 20.0, 601))
    args = (k, 2.0, 2.0, 1.0, 13.0, 1e-8, np.ascontiguousarray(xg),
            np.ascontiguousarray(wg))
    t_np, v_np = timeit(K.steady_amp_grid_numpy, *args, repeat=1)
    t_nb, v_nb = timeit(K.steady_amp_grid_numba, *args)
    return "driven steady amplitude (601 momenta)", t_np, t_nb, rel_dev(v_nb, v_np)


def bench_hermite():
    k = np.linspace(-12.0, 12.0, 4001)
    w = np.full_like(k, k[1] - k[0])
    psi = (np.pi**-0.25 * np.exp(-0.5 * k * k) / (2 * k * k - 1j)).astype(complex)
    t_np, v_np = timeit(K.hermite_project_numpy, k, w, psi, 2048)
    t_nb, v_nb = timeit(K.hermite_project_numba, k, w, psi, 2048)
    return "Hermite projection (4k grid x 2k states)", t_np, t_nb, rel_dev(v_nb, v_np)


def main():
    if not HAVE_NUMBA:
        print("numba is not installed: both columns below run the numpy path")
    rows = [bench_gamma(), bench_squeeze(), bench_steady_amp(), bench_hermite()]
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy [s]':>10}  {'numba [s]':>10}  "
          f"{'speedup':>8}  {'max rel dev':>11}")
    for name, t_np, t_nb, dev in rows:
        print(f"{name:<{width}}  {t_np:10.4f}  {t_nb:10.4f}  "
              f"{t_np / t_nb:8.1f}  {dev:11.2e}")


if __name__ == "__main__":
    main()
