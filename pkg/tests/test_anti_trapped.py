import math

import numpy as np
import pytest

from trapscatter import ANTI, Params, static_rate
from trapscatter.anti_trapped import (
    HeatingSeries,
    amplitudes_gamma_form,
    amplitudes_t,
    elastic_population,
    heating_estimate,
    heating_series,
    steady_rates,
    tail_population,
    _analytic_tail_sums,
)
from trapscatter.errors import TruncationError
from trapscatter.numerics import fit_loglog_slope


def mk(w, d=0.0, drive=0.01, inv=None):
    return Params(trap_ratio=w, detuning=d, drive=drive, case=ANTI,
                  inv_ratio=w if inv is None else inv)


def even_pops(state):
    return state.populations()[::2]


class TestAmplitudes:
    def test_zero_time_is_empty(self):
        st = amplitudes_t(mk(0.5), 0.0)
        assert np.all(st.amps == 0.0)

    def test_odd_levels_empty(self):
        st = amplitudes_t(mk(0.7), 6.0)
        assert np.all(st.amps[1::2] == 0.0)

    def test_vacuum_population_expansion(self):
        p = mk(0.1)
        pops = even_pops(amplitudes_t(p, 13.0)) / p.drive**2
        assert pops[0] == pytest.approx(0.96262, abs=1e-4)
        assert pops[0] == pytest.approx(1 - 4 * 0.1**2, abs=0.004)

    def test_total_population_expansion(self):
        p = mk(0.1)
        tot = even_pops(amplitudes_t(p, 13.0)).sum() / p.drive**2
        assert tot == pytest.approx(1 - 2 * 0.1**2, abs=0.004)

    @pytest.mark.parametrize("w", [0.3, 1.0])
    def test_population_monotone_and_convergent_in_time(self, w):
        # slowest relaxation mode of the total is ~exp[-(1-2w)t] below the
        # critical ratio, so full 1e-4 convergence needs t ~ 25 at w = 0.3
        p = mk(w)
        sums = []
        for t in (5.0, 10.0, 13.0, 20.0, 25.0, 35.0):
            st = amplitudes_t(p, t, n_max=4096, tol=1.0)
            sums.append(even_pops(st).sum())
        assert all(b >= a * (1 - 1e-12) for a, b in zip(sums, sums[1:]))
        assert abs(sums[3] / sums[2] - 1.0) < 1e-3
        assert abs(sums[5] / sums[4] - 1.0) < 1e-4

    def test_requires_matching_frequencies(self):
        with pytest.raises(ValueError):
            amplitudes_t(mk(1.0, inv=2.0), 13.0)

    def test_truncation_error_on_tight_budget(self):
        with pytest.raises(TruncationError):
            amplitudes_t(mk(2.0), 13.0, n_max=64, tol=1e-8)


class TestSteadyRates:
    def test_static_limit(self):
        for d in (-2.0, 0.0, 2.0):
            rr = steady_rates(mk(1e-3, d=d), t=25.0)
            assert rr.total == pytest.approx(static_rate(d), rel=1e-3)
            assert rr.elastic == pytest.approx(static_rate(d), rel=1e-3)

    def test_enhanced_linewidth_elastic(self):
        rr = steady_rates(mk(9.0))
        assert rr.elastic == pytest.approx(2.0 / (9.0 + 1.0) ** 2, rel=0.2)
        assert rr.elastic == pytest.approx(0.016962, rel=1e-3)

    def test_deep_trap_inverse_scaling(self):
        tot100 = steady_rates(mk(100.0)).total
        assert 1.1 < tot100 * 100.0 < 1.4

    def test_elastic_below_total(self):
        for w in (0.1, 0.5, 2.0, 9.0):
            rr = steady_rates(mk(w))
            assert rr.elastic <= rr.total

    def test_elastic_population_shortcut(self):
        p = mk(3.0, d=0.7)
        assert elastic_population(p) / p.drive**2 == pytest.approx(
            steady_rates(p).elastic, rel=1e-8
        )

    def test_reference_value_w2(self):
        rr = steady_rates(mk(2.0))
        assert rr.total == pytest.approx(0.42511, abs=3e-4)
        assert rr.elastic == pytest.approx(0.18072, abs=1e-5)


class TestTailLaw:
    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            tail_population(mk(1.0), 10)

    @pytest.mark.parametrize("w,expo", [(0.5, -2.0), (1.0, -1.5)])
    def test_power_law_exponent(self, w, expo):
        ns = np.arange(100, 1001, 50)
        ys = [tail_population(mk(w), int(n)) for n in ns]
        slope, _ = fit_loglog_slope(ns, ys)
        assert slope == pytest.approx(expo, abs=1e-10)

    def test_matches_time_integrated_amplitudes(self):
        w = 1.0
        p = mk(w)
        t = max(13.0, (math.log(2 * 1000.0) + 12.0) / (2 * w))
        pops = even_pops(amplitudes_t(p, t, n_max=2048, tol=1.0))
        ns = np.arange(100, 1001)
        ratio = pops[ns] / np.array([tail_population(p, int(n)) for n in ns])
        assert ratio.min() > 0.95 and ratio.max() < 1.05

    def test_gamma_form_limits(self):
        p = mk(0.8)
        # late times reduce to the steady tail
        assert amplitudes_gamma_form(p, 500.0, 300) == pytest.approx(
            tail_population(p, 300), rel=1e-12
        )
        # at t = 0 the cutoff kills the population entirely
        assert amplitudes_gamma_form(p, 0.0, 300) < 1e-100

    def test_gamma_form_vs_quadrature(self):
        p = mk(0.6)
        got = amplitudes_gamma_form(p, 8.0, 200)
        pops = even_pops(amplitudes_t(p, 8.0, n_max=1024, tol=1.0))
        assert got == pytest.approx(float(pops[200]), rel=0.10)

    def test_heating_moment_diverges_at_half(self):
        _, heat_below = _analytic_tail_sums(mk(0.4), 100)
        _, heat_above = _analytic_tail_sums(mk(0.6), 100)
        assert math.isfinite(heat_below)
        assert math.isinf(heat_above)


class TestHeatingSeries:
    def test_plateau_value_small_ratio(self):
        p = mk(0.1)
        hs = heating_series(p, np.array([15.0, 20.0]))
        assert hs.fitted_exponent is None
        assert hs.converged
        assert hs.rate[-1] == pytest.approx(4 * 0.1**2, rel=0.3)
        assert hs.rate[-1] == pytest.approx(hs.rate[0], rel=5e-2)

    def test_plateau_grows_toward_half(self):
        r_02 = heating_series(mk(0.2), np.array([20.0])).rate[0] / (4 * 0.04)
        r_04 = heating_series(mk(0.4), np.array([20.0])).rate[0] / (4 * 0.16)
        assert r_04 > r_02 > 1.0

    def test_exponential_growth_exponent(self):
        ts = np.linspace(5.0, 12.0, 15)
        hs = heating_series(mk(0.8), ts)
        assert hs.fitted_exponent == pytest.approx(0.6, rel=0.05)
        assert np.all(np.diff(hs.rate) > 0)

    def test_monotone_time_required(self):
        with pytest.raises(ValueError):
            heating_series(mk(0.6), np.array([3.0, 2.0]))

    def test_series_type(self):
        hs = heating_series(mk(0.6), np.linspace(5.0, 12.0, 8))
        assert isinstance(hs, HeatingSeries)
        assert hs.times.shape == hs.rate.shape


class TestHeatingEstimate:
    def test_small_ratio_quadratic(self):
        est = heating_estimate(mk(0.05))
        assert est.value == pytest.approx(0.01, rel=2e-2)

    def test_vanishes_without_trap(self):
        assert heating_estimate(mk(1e-8)).value < 1e-14

    def test_crossover(self):
        p = Params(trap_ratio=1.0, eta=0.1, case=ANTI, inv_ratio=1.0)
        assert heating_estimate(p).recoil_crossover == pytest.approx(0.0592, abs=2e-4)
