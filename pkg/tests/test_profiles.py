import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from driftlab.profiles import (
    Linear,
    LogCorrected,
    PowerLaw,
    ProfileRangeError,
    Tabulated,
    Zero,
    eval_psi,
)

ALL_PROFILES = [
    PowerLaw(3.0, -1.0, 1.0),
    PowerLaw(1.0, 0.5, 2.0),
    PowerLaw(-2.0, -1.5, 0.5),
    LogCorrected(n_dim=2, alpha=2.0),
    LogCorrected(n_dim=3, alpha=-1.0, r0=1.5),
    Linear(),
    Zero(),
    Tabulated([0.0, 1.0, 4.0], [0.0, 2.0, -1.0]),
]


def test_zero_profile_is_identically_zero():
    assert eval_psi(Zero(), 7.3) == 0.0


def test_powerlaw_point_value():
    # A r^beta at r = 2 with A=3, beta=-1
    assert eval_psi(PowerLaw(3.0, -1.0, 1.0), 2.0) == pytest.approx(1.5, rel=1e-15)


def test_logcorrected_point_value():
    # (n + alpha/log r)/r at r = e^2, n=2, alpha=2: (2 + 1)/e^2
    p = LogCorrected(n_dim=2, alpha=2.0, r0=math.e)
    assert eval_psi(p, math.e**2) == pytest.approx(3.0 / math.e**2, rel=1e-14)
    assert eval_psi(p, math.e**2) == pytest.approx(0.4060058497098381, rel=1e-12)


@pytest.mark.parametrize("profile", ALL_PROFILES, ids=lambda p: type(p).__name__)
def test_origin_value_is_zero(profile):
    assert eval_psi(profile, 0.0) == 0.0


def test_far_field_formula_exact():
    p = PowerLaw(2.5, -0.7, 1.3)
    for r in (1.3, 2.0, 17.0):
        assert p.psi(r) == 2.5 * r**-0.7
    q = LogCorrected(n_dim=2, alpha=1.5, r0=2.0)
    for r in (2.0, 5.0, 40.0):
        assert q.psi(r) == (2 + 1.5 / math.log(r)) / r


def test_ramp_is_continuous_at_activation_radius():
    for p in (PowerLaw(3.0, -1.0, 1.0), PowerLaw(-1.0, 2.0, 0.7), LogCorrected(n_dim=2, alpha=-3.0, r0=2.0)):
        r0 = p.r0
        below = p.psi(r0 * (1 - 1e-9))
        at = p.psi(r0)
        assert below == pytest.approx(at, rel=1e-6, abs=1e-9)


def test_ramp_slope_matches_when_monotone_compatible():
    # for exponents in [0, 3] the ramp is C^1 across r0: one-sided slopes agree
    p = PowerLaw(2.0, 1.5, 1.0)
    eps = 1e-6
    left = (p.psi(1.0) - p.psi(1.0 - eps)) / eps
    right = (p.psi(1.0 + eps) - p.psi(1.0)) / eps
    assert left == pytest.approx(right, rel=1e-4)


@settings(max_examples=60, deadline=None)
@given(
    amplitude=st.floats(-5, 5, allow_nan=False),
    exponent=st.floats(-3, 3, allow_nan=False),
    r0=st.floats(0.1, 3.0, allow_nan=False),
)
def test_powerlaw_ramp_monotone_and_bounded(amplitude, exponent, r0):
    p = PowerLaw(amplitude, exponent, r0)
    s = np.linspace(0.0, r0, 200)
    vals = p.psi(s)
    target = amplitude * r0**exponent
    diffs = np.diff(vals)
    if target >= 0:
        assert np.all(diffs >= -1e-12 * max(1.0, abs(target)))
    else:
        assert np.all(diffs <= 1e-12 * max(1.0, abs(target)))
    assert abs(vals[-1] - target) <= 1e-12 * max(1.0, abs(target))
    assert vals[0] == 0.0


@pytest.mark.parametrize("profile", ALL_PROFILES, ids=lambda p: type(p).__name__)
def test_cumulative_integral_matches_quadrature(profile):
    # dual route: closed form / exact piecewise form against adaptive quadrature
    r_hi = 4.0
    kink = [getattr(profile, "r0", None)]
    points = [k for k in kink if k is not None and k < r_hi]
    for r in (0.3, 1.7, r_hi):
        expected, err = quad(lambda s: profile.psi(s), 0.0, r,
                             points=[k for k in points if k < r], limit=200)
        assert profile.psi_integral(r) == pytest.approx(expected, rel=1e-8, abs=1e-10)


def test_tabulated_interpolation_and_range():
    t = Tabulated([0.0, 1.0, 3.0], [0.0, 2.0, 2.0])
    assert t.psi(0.5) == pytest.approx(1.0)
    assert t.psi(2.0) == pytest.approx(2.0)
    np.testing.assert_allclose(t.psi(np.array([0.0, 1.0, 3.0])), [0.0, 2.0, 2.0])
    with pytest.raises(ProfileRangeError):
        t.psi(3.5)
    with pytest.raises(ValueError):
        t.psi(-0.1)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        Tabulated([0.0, 1.0, 1.0], [0.0, 1.0, 2.0])  # not strictly increasing
    with pytest.raises(ValueError):
        Tabulated([0.5, 1.0], [0.0, 1.0])  # does not start at the origin
    with pytest.raises(ValueError):
        Tabulated([0.0, 1.0], [0.5, 1.0])  # psi(0) != 0
    with pytest.raises(ValueError):
        Tabulated([0.0], [0.0])  # too few samples


def test_tabulated_positive_part_integral():
    t = Tabulated([0.0, 1.0, 2.0, 4.0], [0.0, 2.0, -2.0, 1.0])
    tp = t.positive_part()
    assert np.all(tp.speeds >= 0.0)
    for r in (0.7, 1.4, 2.9, 4.0):
        expected, _ = quad(lambda s: max(t.psi(s), 0.0), 0.0, r,
                           points=[p for p in (1.0, 1.5, 2.0, 3.0) if p < r], limit=200)
        assert tp.psi_integral(r) == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test_powerlaw_rejects_bad_r0():
    with pytest.raises(ValueError):
        PowerLaw(1.0, -1.0, 0.0)


def test_logcorrected_requires_r0_beyond_one():
    with pytest.raises(ValueError):
        LogCorrected(n_dim=2, alpha=1.0, r0=1.0)


def test_vectorized_matches_scalar():
    p = PowerLaw(2.0, -1.0, 1.0)
    rs = np.array([0.0, 0.4, 1.0, 2.5])
    np.testing.assert_allclose(p.psi(rs), [p.psi(float(r)) for r in rs], rtol=1e-15)
    np.testing.assert_allclose(p.psi_integral(rs), [p.psi_integral(float(r)) for r in rs],
                               rtol=1e-15)
