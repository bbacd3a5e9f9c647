import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate
from scipy.special import eval_hermite, gammaln

from trapscatter.errors import TruncationError
from trapscatter.fock import (
    PARITY_EVEN,
    displacement_column,
    displacement_element,
    emission_moment,
    fock_momentum_wavefunction,
    hermite_functions,
    squeeze_vacuum,
)


class TestDisplacement:
    def test_vacuum_overlap(self):
        assert displacement_element(0, 0, 0.1) == pytest.approx(
            math.exp(-0.005), rel=1e-12
        )

    def test_single_kick_vs_bruteforce(self, displacement_bruteforce):
        u = displacement_bruteforce(0.1)
        got = displacement_element(1, 0, 0.1)
        assert got == pytest.approx(u[1, 0], rel=1e-10)
        assert got == pytest.approx(1j * 0.1 * math.exp(-0.005), rel=1e-10)

    def test_identity_at_zero_kick(self):
        assert displacement_element(3, 3, 0.0) == 1.0
        assert displacement_element(2, 5, 0.0) == 0.0

    @pytest.mark.parametrize("eta", [0.05, 0.3, 0.8])
    def test_general_elements_vs_bruteforce(self, displacement_bruteforce, eta):
        u = displacement_bruteforce(eta, n_basis=60)
        for m, n in [(0, 0), (2, 0), (0, 3), (4, 4), (7, 2), (3, 8), (12, 11)]:
            assert displacement_element(m, n, eta) == pytest.approx(
                u[m, n], rel=1e-9, abs=1e-13
            )

    def test_symmetry(self):
        assert displacement_element(6, 2, 0.4) == pytest.approx(
            displacement_element(2, 6, 0.4), rel=1e-12
        )

    def test_negative_eta_is_conjugate_inverse(self, displacement_bruteforce):
        u = displacement_bruteforce(-0.25, n_basis=50)
        assert displacement_element(3, 1, -0.25) == pytest.approx(u[3, 1], rel=1e-9)

    def test_column_matches_elements(self):
        col = displacement_column(12, 0.3)
        for n in range(13):
            assert col[n] == pytest.approx(displacement_element(n, 0, 0.3), rel=1e-12)

    def test_large_n_stays_finite(self):
        v = displacement_element(1000, 998, 0.2)
        assert np.isfinite(v.real) and np.isfinite(v.imag)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(min_value=0.0, max_value=0.5), st.integers(min_value=0, max_value=10))
    def test_unitarity_rows(self, eta, n):
        total = sum(abs(displacement_element(m, n, eta)) ** 2 for m in range(60))
        assert total == pytest.approx(1.0, abs=1e-8)


class TestSqueezeVacuum:
    def test_zero_phase_is_identity(self):
        st_ = squeeze_vacuum(0.0, 8)
        assert st_.amps[0] == 1.0
        assert np.all(st_.amps[1:] == 0.0)

    def test_amplitudes_vs_bruteforce(self, squeeze_bruteforce):
        vec = squeeze_bruteforce(1.0, n_basis=256)
        st_ = squeeze_vacuum(1.0, 120)
        for n in (0, 2, 4, 10):
            assert st_.amps[n] == pytest.approx(vec[n], rel=1e-8, abs=1e-12)
        assert abs(st_.amps[2]) ** 2 == pytest.approx(0.18795, abs=2e-5)

    @pytest.mark.parametrize("phase,n_max", [(0.3, 200), (1.0, 400), (2.0, 1600)])
    def test_normalized(self, phase, n_max):
        st_ = squeeze_vacuum(phase, n_max)
        assert st_.norm_sq() == pytest.approx(1.0, abs=1e-10)

    def test_parity_strictly_even(self):
        st_ = squeeze_vacuum(1.3, 200)
        assert st_.parity == PARITY_EVEN
        assert np.all(st_.amps[1::2] == 0.0)

    def test_phase_alternation(self):
        # each even step multiplies by +i times a positive magnitude ratio
        st_ = squeeze_vacuum(0.8, 40)
        for n in range(0, 20, 2):
            rotated = st_.amps[n] * (-1j) ** (n // 2)
            assert rotated.imag == pytest.approx(0.0, abs=1e-14)
            assert rotated.real > 0.0

    def test_truncation_error(self):
        with pytest.raises(TruncationError):
            squeeze_vacuum(3.0, 20)


class TestEmissionMoments:
    def test_closed_forms(self):
        assert emission_moment(0) == pytest.approx(1.0, rel=1e-15)
        assert emission_moment(2) == pytest.approx(0.4, rel=1e-15)
        assert emission_moment(4) == pytest.approx(9.0 / 35.0, rel=1e-15)

    @pytest.mark.parametrize("p", [0, 2, 4])
    def test_against_angular_quadrature(self, p):
        val, _ = integrate.quad(
            lambda th: 2 * np.pi * (3 / (16 * np.pi)) * (1 + np.cos(th) ** 2)
            * np.cos(th) ** p * np.sin(th),
            0.0, np.pi, epsabs=1e-13, epsrel=1e-13,
        )
        assert emission_moment(p) == pytest.approx(val, abs=1e-12)

    @pytest.mark.parametrize("p", [-2, 1, 3, 6])
    def test_unsupported(self, p):
        with pytest.raises(ValueError):
            emission_moment(p)


class TestMomentumWavefunctions:
    def test_ground_state_peak(self):
        assert fock_momentum_wavefunction(0, 0.0) == pytest.approx(np.pi**-0.25, rel=1e-12)

    def test_second_state_at_origin(self):
        assert fock_momentum_wavefunction(2, 0.0) == pytest.approx(
            -np.pi**-0.25 / math.sqrt(2.0), rel=1e-12
        )

    def test_orthonormality(self):
        k = np.linspace(-12, 12, 6001)
        h = hermite_functions(10, k)
        gram = h @ h.T * (k[1] - k[0])
        assert np.allclose(gram, np.eye(11), atol=1e-8)

    def test_three_term_recurrence_pointwise(self):
        k = np.linspace(-6, 6, 101)
        h = hermite_functions(30, k)
        for n in range(1, 30):
            lhs = h[n + 1]
            rhs = np.sqrt(2.0 / (n + 1)) * k * h[n] - np.sqrt(n / (n + 1.0)) * h[n - 1]
            assert np.max(np.abs(lhs - rhs)) < 1e-10

    def test_against_hermite_polynomials(self):
        k = np.linspace(-3, 3, 41)
        for n in (1, 4, 9):
            ref = (
                eval_hermite(n, k)
                * np.exp(-0.5 * k * k)
                * np.exp(-0.5 * (n * math.log(2.0) + gammaln(n + 1.0)) - 0.25 * math.log(math.pi))
            )
            got = fock_momentum_wavefunction(n, k)
            assert np.allclose(got, ref, atol=1e-10)
