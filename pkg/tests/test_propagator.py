import math

import numpy as np
import pytest

from trapscatter import ANTI, EQUAL, FREE, Params
from trapscatter.anti_trapped import amplitudes_t, steady_rates
from trapscatter.fock import project_onto_fock
from trapscatter.free_excited import steady_state_k as free_steady
from trapscatter.propagator import (
    evolved_gaussian,
    mehler_kernel,
    spectrum,
    steady_state_k,
)


def ground_gaussian(k):
    return np.pi**-0.25 * np.exp(-0.5 * k * k)


def kernel_apply(kout, tau, inv, w, n=200_001, span=30.0):
    """Direct quadrature of int G(k, k', tau) g(k') dk'."""
    kp = np.linspace(-span, span, n)
    out = np.empty(kout.size, dtype=complex)
    for i, k in enumerate(kout):
        vals = mehler_kernel(k, kp, tau, inv, w) * ground_gaussian(kp)
        out[i] = np.trapezoid(vals, kp)
    return out


class TestKernel:
    def test_singular_at_zero_time(self):
        with pytest.raises(ValueError):
            mehler_kernel(0.1, 0.2, 0.0, 1.0, 1.0)

    def test_matches_evolved_gaussian(self):
        kout = np.array([0.0, 0.5, 1.3, 2.7])
        for tau in (0.1, 1.0, 3.0):
            got = kernel_apply(kout, tau, 1.0, 1.0)
            want = evolved_gaussian(kout, tau, 1.0, 1.0)
            assert np.max(np.abs(got - want)) < 1e-8

    def test_unitary_on_gaussian(self):
        k = np.linspace(-40, 40, 20001)
        psi = kernel_apply(k, 0.7, 1.0, 1.0, n=100_001, span=25.0)
        norm = np.trapezoid(np.abs(psi) ** 2, k)
        assert norm == pytest.approx(1.0, abs=1e-6)

    def test_free_limit_preserves_distribution(self):
        # weak inversion: |U(tau) g| stays the initial Gaussian profile
        k = np.linspace(-3, 3, 13)
        for tau in (0.5, 1.5):
            psi = kernel_apply(k, tau, 0.02, 1.0, n=400_001, span=40.0)
            assert np.max(np.abs(np.abs(psi) - ground_gaussian(k))) < 1e-2

    def test_semigroup_on_gaussian_packet(self):
        # U(t1+t2) g computed directly vs kernel-evolving U(t2) g
        k = np.array([0.0, 0.8, 1.9])
        t1, t2, inv, w = 0.4, 0.9, 1.3, 1.0
        kp = np.linspace(-30, 30, 400_001)
        inner = evolved_gaussian(kp, t2, inv, w)
        got = np.array(
            [np.trapezoid(mehler_kernel(kk, kp, t1, inv, w) * inner, kp) for kk in k]
        )
        want = evolved_gaussian(k, t1 + t2, inv, w)
        assert np.max(np.abs(got - want)) < 1e-6

    def test_pointwise_semigroup_damped_fresnel(self):
        # int G(k,k'',t1) G(k'',k',t2) dk'' -> G(k,k',t1+t2) with a weak
        # Gaussian damper extrapolated away (the integral is only
        # improper-Riemann convergent)
        inv, w = 1.0, 1.0
        t1, t2 = 0.6, 0.9
        k, kp = 0.7, -0.4
        kpp = np.linspace(-150, 150, 2_400_001)
        prod = mehler_kernel(k, kpp, t1, inv, w) * mehler_kernel(kpp, kp, t2, inv, w)
        eps_list = np.array([4e-3, 2e-3, 1e-3])
        vals = np.array(
            [np.trapezoid(prod * np.exp(-eps * kpp**2), kpp) for eps in eps_list]
        )
        # the damped value is analytic in eps; extrapolate the constant term
        v = np.polyfit(eps_list, vals, 2)[-1]
        want = mehler_kernel(k, kp, t1 + t2, inv, w)
        assert abs(v - want) < 1e-5 * abs(want) + 1e-6


class TestEvolvedGaussian:
    def test_initial_condition(self):
        k = np.linspace(-4, 4, 41)
        assert np.allclose(evolved_gaussian(k, 0.0, 1.0, 2.0), ground_gaussian(k),
                           atol=1e-14)

    def test_matched_inversion_cosh_variance(self):
        w = 1.0
        tau = 0.5  # 2 w tau = 1
        k = np.linspace(-30, 30, 120_001)
        dens = np.abs(evolved_gaussian(k, tau, w, w)) ** 2
        var = np.trapezoid(k * k * dens, k) / np.trapezoid(dens, k)
        assert var / 0.5 == pytest.approx(math.cosh(1.0), rel=1e-8)

    @pytest.mark.parametrize("rho", [0.5, 2.0])
    def test_general_strength_variance_law(self, rho):
        w = 1.0
        inv = rho * w
        tau = 0.8
        k = np.linspace(-60, 60, 200_001)
        dens = np.abs(evolved_gaussian(k, tau, inv, w)) ** 2
        var = np.trapezoid(k * k * dens, k) / np.trapezoid(dens, k)
        want = 0.25 * ((1 + rho**2) * math.cosh(2 * inv * tau) + (1 - rho**2))
        assert var == pytest.approx(want, rel=1e-8)

    def test_free_case_pure_phase(self):
        k = np.linspace(-5, 5, 101)
        g = evolved_gaussian(k, 2.3, 0.0, 1.7)
        assert np.allclose(np.abs(g), ground_gaussian(k), atol=1e-14)


class TestSteadyState:
    def test_free_limit_matches_direct_form(self):
        p = Params(trap_ratio=2.0, detuning=1.0, case=FREE)
        st = steady_state_k(p, t_final=40.0, k_max=12.0, n_points=801)
        direct = free_steady(p)
        ref = np.interp(st.grid, direct.grid, direct.amps.real) + 1j * np.interp(
            st.grid, direct.grid, direct.amps.imag
        )
        num = np.trapezoid(np.abs(st.amps - ref) ** 2, st.grid)
        den = np.trapezoid(np.abs(ref) ** 2, st.grid)
        assert math.sqrt(num / den) < 1e-4

    def test_cross_basis_vacuum_population(self):
        p = Params(trap_ratio=2.0, detuning=0.0, case=ANTI, inv_ratio=2.0)
        st = steady_state_k(p, k_max=20.0, n_points=3001)
        a = project_onto_fock(st.grid, st.weights, st.amps, 0)
        fock = amplitudes_t(p, 13.0, n_max=512, tol=1.0)
        assert abs(a[0]) ** 2 == pytest.approx(
            float(np.abs(fock.amps[0]) ** 2), rel=1e-6
        )

    def test_equal_case_rejected(self):
        with pytest.raises(ValueError):
            steady_state_k(Params(trap_ratio=1.0, case=EQUAL))


class TestSpectrum:
    def test_matched_strength_symmetric(self):
        p = Params(trap_ratio=2.0, case=ANTI, inv_ratio=2.0)
        ds = np.array([-2.0, -1.0, 1.0, 2.0])
        vals = spectrum(p, ds, k_max=20.0, n_points=1201)
        r0 = spectrum(p, np.array([0.0]), k_max=20.0, n_points=1201)[0]
        assert abs(vals[2] - vals[1]) / r0 < 1e-3
        assert abs(vals[3] - vals[0]) / r0 < 1e-3

    def test_weak_inversion_matches_free_form(self):
        p = Params(trap_ratio=2.0, case=ANTI, inv_ratio=0.01)
        ds = np.array([-1.0, 0.0, 1.0])
        got = spectrum(p, ds, k_max=12.0, n_points=1201)
        from trapscatter.free_excited import total_rate

        for d, v in zip(ds, got):
            want = total_rate(Params(trap_ratio=2.0, detuning=float(d), case=FREE))
            assert v == pytest.approx(want, rel=0.02)

    def test_asymmetry_direction_flips(self):
        base = dict(trap_ratio=2.0, case=ANTI)
        weaker = Params(**base, inv_ratio=1.0)
        stronger = Params(**base, inv_ratio=4.0)
        ds = np.array([-1.0, 1.0])
        a_weak = spectrum(weaker, ds, k_max=20.0, n_points=1201)
        a_strong = spectrum(stronger, ds, k_max=20.0, n_points=1201)
        assert a_weak[1] > a_weak[0]      # blue-leaning, free-like
        assert a_strong[1] < a_strong[0]  # red-leaning once inversion dominates


class TestMomentumPictures:
    def test_population_ordering_at_fixed_trap(self):
        # equal > free > anti(inverted strength = linewidth) at resonance
        w, drive = 2.0, 0.01
        equal_pop = 1.0  # eta = 0: static-atom population fraction
        free_pop = steady_state_k(
            Params(trap_ratio=w, case=FREE), k_max=12.0, n_points=1201
        ).norm_sq() / drive**2
        anti_pop = steady_state_k(
            Params(trap_ratio=w, case=ANTI, inv_ratio=1.0), k_max=20.0, n_points=1601
        ).norm_sq() / drive**2
        assert equal_pop > free_pop > anti_pop

    def test_momentum_width_ordering(self):
        w = 2.0
        free_st = steady_state_k(Params(trap_ratio=w, case=FREE),
                                 k_max=12.0, n_points=1201)
        anti_st = steady_state_k(Params(trap_ratio=w, case=ANTI, inv_ratio=1.0),
                                 k_max=20.0, n_points=1601)
        assert free_st.momentum_variance() < 0.5 < anti_st.momentum_variance()


def test_fock_route_population_agreement_detuned():
    p = Params(trap_ratio=0.5, detuning=1.0, case=ANTI, inv_ratio=0.5)
    st = steady_state_k(p, k_max=20.0, n_points=3001)
    a = project_onto_fock(st.grid, st.weights, st.amps, 400)
    kern = np.abs(a) ** 2
    fock = amplitudes_t(p, 13.0, n_max=400, tol=1.0)
    fk = fock.populations()
    assert np.sum(kern[:401]) == pytest.approx(np.sum(fk), rel=1e-4)
    assert np.sum(kern[1::2]) < 1e-12 * np.sum(kern)
