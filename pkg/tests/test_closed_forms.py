import pytest

from prudent import closed_forms as cf
from prudent.funceq_solver import solve_feqB, solve_feqR

PP2 = [4, 6, 12, 28, 72, 196, 552, 1590, 4656, 13812, 41412, 125286, 381976,
       1172440, 3620024, 11235830, 35036928, 109715014, 344863872]
PP3 = [6, 10, 24, 66, 198, 628, 2068, 7004, 24260, 85596, 306692, 1113204, 4085120,
       15131436, 56495170, 212377850, 803094926, 3052424080, 11653580124]


def test_pp2_known_coefficients():
    assert cf.pp2_gf(20).scalars()[2:] == PP2


def test_pp2_two_routes_agree():
    assert cf.pp2_gf(30) == cf.pp2_closed(30)


def test_pp3_known_coefficients():
    assert cf.pp3_gf(20).scalars()[2:] == PP3


def test_R_one_starts():
    # pp3 = 2(t^2/(1-t) + B(t,1) + R(t,1,1)) with 6 at t^2
    assert cf.R_one(6).scalars()[2] == 1


def test_one_sided():
    assert cf.one_sided_gf(5).scalars() == [0, 0, 1, 1, 1, 1]


def test_bargraph_closed_form_equals_iteration():
    N = 20
    assert cf.bargraph_gf(N) == solve_feqB(N).evaluate(w=1)


def test_bargraph_one_counts():
    # column-convex bar graphs: 1, 2, 5, 13, 35, 97 by half-perimeter
    assert cf.bargraph_one(7).scalars()[2:] == [1, 2, 5, 13, 35, 97]


def test_kernel_quadratic():
    N = 30
    q = cf.q_series(N)
    t = cf._t(N)
    assert (t * q * q - (1 + t * t) * q + 1).iszero()


@pytest.mark.parametrize("power", [0, 1, 2])
def test_K_L_forms_agree(power):
    spec = cf.WSpec(power, symbolic=True)
    cf.K_series(spec, 16)
    cf.L_series(spec, 16)


def test_subst_and_compose_agree_for_scalar_argument():
    spec = cf.WSpec(1, symbolic=False)
    a = cf.K_series(spec, 16, method="subst")
    b = cf.K_series(spec, 16, method="compose")
    assert a == b


def test_R_iteration_consistent():
    assert cf.R_iteration_residual(14).iszero()


def test_R_diag_matches_feqR():
    N = 16
    R = solve_feqR(N)
    assert R.evaluate(u=1, w=1) == cf.R_one(N)


def test_powers_of_q():
    rep = cf.powers_of_q_identities(30)
    assert rep.ok, rep.failures()


def test_positivity():
    rep = cf.check_positivity(30)
    assert rep.ok, rep.failures()


def test_catalog_is_cached():
    cat = cf.GfCatalog(12)
    assert cat.pp2 is cat.pp2
    assert cat.pp3.scalars()[2:5] == [6, 10, 24]
