from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from prudent.exact_series import TruncatedSeries, t_series

N = 12
ints = st.lists(st.integers(-20, 20), min_size=1, max_size=N + 1)


def S(vals, order=N):
    return TruncatedSeries.from_scalars(vals, order)


def naive_mul(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= order:
                out[i + j] += x * y
    return out


@given(ints, ints)
def test_scalar_product_matches_convolution(a, b):
    assert (S(a) * S(b)).scalars() == naive_mul(a, b, N)


@given(ints)
def test_recip_inverts_unit_series(a):
    a = [1] + a
    inv = S(a).recip()
    assert (S(a) * inv).scalars() == [1] + [0] * N


@given(ints)
def test_sqrt_of_square(a):
    a = [1] + a
    sq = S(a) * S(a)
    assert sq.sqrt() == S(a)


def test_geometric_series():
    inv = (1 - t_series(10)).recip()
    assert inv.scalars() == [1] * 11


def test_catalytic_product_and_evaluation():
    u = TruncatedSeries.monomial(1, u=1, order=6)      # t u
    w = TruncatedSeries.monomial(1, w=1, order=6)      # t w
    s = (u + w) ** 3
    assert s.evaluate(u=1, w=1).scalars() == [0, 0, 0, 8, 0, 0, 0]
    assert s.max_degree("u") == 3


def test_divided_difference_of_power():
    # (u^3 - w^3)/(u - w) = u^2 + uw + w^2
    cube_u = TruncatedSeries.monomial(0, u=3, order=3)
    cube_w = TruncatedSeries.monomial(0, w=3, order=3)
    expect = (TruncatedSeries.monomial(0, u=2, order=3) + TruncatedSeries.monomial(0, u=1, w=1, order=3)
              + TruncatedSeries.monomial(0, w=2, order=3))
    assert cube_u.divided_difference("u", "w") == expect
    assert cube_w.divided_difference("w", "u") == expect


def test_shift_and_truncate():
    s = S([0, 0, 3, 4])
    assert s.valuation() == 2
    assert s.shift(-2).scalars()[:2] == [3, 4]
    assert s.truncate(2).scalars() == [0, 0, 3]


def test_rational_coefficients_allowed():
    s = S([1, Fraction(1, 2)])
    assert (s * 2).scalars()[:2] == [2, 1]


def test_subst_u_by_t():
    # B(u) = u t  ->  B(t) = t^2 with tshift
    s = TruncatedSeries.monomial(1, u=1, order=5)
    out = s.subst("u", mono=(0, 0, 0), tshift=1)
    assert out.scalars() == [0, 0, 1, 0, 0, 0]


@settings(max_examples=30)
@given(ints, ints)
def test_addition_commutes(a, b):
    assert S(a) + S(b) == S(b) + S(a)


def test_recip_of_nonunit_rejected():
    with pytest.raises((ZeroDivisionError, ArithmeticError, ValueError)):
        S([0, 1]).recip()
