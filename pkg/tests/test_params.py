import numpy as np
import pytest
from hypothesis import given, strategies as st

from trapscatter import ANTI, EQUAL, FREE, Params, RateResult, RegimeWarning, r_ideal, static_rate


def test_r_ideal_is_drive_squared():
    assert r_ideal(Params(trap_ratio=1.0, drive=0.05)) == pytest.approx(0.0025)
    assert r_ideal(Params(trap_ratio=1.0, drive=0.1)) == pytest.approx(0.01)


def test_strong_drive_flagged_but_accepted():
    with pytest.warns(RegimeWarning):
        p = Params(trap_ratio=1.0, drive=1.0)
    assert not p.in_weak_drive_regime
    assert r_ideal(p) == pytest.approx(1.0)


def test_static_rate_reference_points():
    assert static_rate(0.0) == pytest.approx(1.0)
    assert static_rate(0.5) == pytest.approx(0.5)
    assert static_rate(2.0) == pytest.approx(1.0 / 17.0)


@given(st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_static_rate_even(d):
    assert static_rate(d) == pytest.approx(static_rate(-d), rel=1e-12)


@given(st.floats(min_value=0, max_value=50), st.floats(min_value=0, max_value=50))
def test_static_rate_monotone(d1, d2):
    lo, hi = sorted([d1, d2])
    assert static_rate(hi) <= static_rate(lo) + 1e-15


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(trap_ratio=0.0),
        dict(trap_ratio=-1.0),
        dict(trap_ratio=1.0, drive=0.0),
        dict(trap_ratio=1.0, eta=-0.1),
        dict(trap_ratio=1.0, case="weird"),
        dict(trap_ratio=1.0, case=ANTI),  # missing inv_ratio
        dict(trap_ratio=1.0, case=ANTI, inv_ratio=-2.0),
        dict(trap_ratio=1.0, case=FREE, inv_ratio=2.0),
    ],
)
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValueError):
        Params(**kwargs)


def test_rate_result_rejects_negative():
    with pytest.raises(ValueError):
        RateResult(total=-0.1, elastic=0.0)
    rr = RateResult(total=0.5, elastic=0.25)
    assert rr.elastic <= rr.total


def test_cases_are_distinct():
    assert len({EQUAL, FREE, ANTI}) == 3
