import math

import pytest

from prudent import asymptotics as asy
from prudent import closed_forms as cf


def test_rho():
    c = asy.rho()
    assert abs(c.value - 0.2955977) < 1e-6
    assert c.residual < 1e-12
    assert abs(asy.rho_poly(c.value)) < 1e-12
    lo, hi = c.bracket
    assert lo <= c.value <= hi and hi - lo <= 1e-13


def test_amplitude():
    assert abs(asy.amplitude_A().value - 0.8548166) < 1e-6


def test_sigma_and_tau():
    s, t = asy.sigma(), asy.tau()
    assert abs(s.value - 0.2441312) < 1e-6
    assert abs(asy.tau_poly(t.value)) < 1e-12
    assert abs(s.value - t.value ** 2) < 1e-15
    assert abs(1 / math.sqrt(s.value) - 2.02) < 0.01


def test_sigma_n_ladder():
    r = asy.rho().value
    vals = [asy.sigma_n(n) for n in range(11)]
    assert abs(vals[0].value - asy.sigma().value) < 1e-10
    for a, b in zip(vals, vals[1:]):
        assert a.value < b.value
    assert vals[-1].value < r
    assert max(v.residual for v in vals) < 1e-12


def test_sigma_n_negative():
    with pytest.raises(ValueError):
        asy.sigma_n(-1)


def test_q_at_rho():
    qv, target = asy.q_at_rho()
    assert abs(qv - target) < 1e-10
    assert abs(asy.q(asy.rho().value) - target) < 1e-7


def test_singular_curve():
    for t, r in asy.singular_curve_residuals((0.05, 0.1, 0.2)).items():
        assert abs(r) < 1e-8


def test_bargraph_float_matches_series():
    N = 60
    B = cf.bargraph_gf(N)
    t, u = 0.1, 0.7
    val = sum(float(c) * t ** n * u ** m[0] for n, m, c in B.terms())
    assert abs(val - asy.bargraph(t, u)) < 1e-12


def test_bisect_requires_sign_change():
    with pytest.raises(asy.BracketError):
        asy.bisect(lambda x: x * x + 1, -1.0, 1.0)


def test_growth_geometric():
    mu, amp = asy.growth_estimate([2 ** m for m in range(30)], model="pure-exponential")
    assert abs(mu - 2.0) < 1e-9
    assert abs(amp - 1.0) < 1e-9


def test_growth_needs_twenty():
    with pytest.raises(ValueError):
        asy.growth_estimate([1] * 10)


def test_growth_unknown_model():
    with pytest.raises(ValueError):
        asy.growth_estimate([1] * 30, model="spline")


def test_scaled_coefficients_approach_A():
    c = cf.pp2_gf(200).scalars()
    mu = 1 / asy.rho().value
    s = asy.scaled_coefficients(c, mu, [50, 100, 200])
    A = asy.amplitude_A().value
    assert abs(s[-1] - A) < abs(s[0] - A)
