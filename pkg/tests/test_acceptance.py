"""Acceptance criteria, one PASS/FAIL line each (also runnable as a script).

Time limits are checked on the wall clock of the work inside each check.
"""

import math
import random
import sys
import time

import pytest

from prudent import asymptotics as asy
from prudent import closed_forms as cf
from prudent import funceq_solver as fs
from prudent import oracle
from prudent import sampler

PP2 = [4, 6, 12, 28, 72, 196, 552, 1590, 4656, 13812, 41412, 125286, 381976,
       1172440, 3620024, 11235830, 35036928, 109715014, 344863872]
PP3 = [6, 10, 24, 66, 198, 628, 2068, 7004, 24260, 85596, 306692, 1113204, 4085120,
       15131436, 56495170, 212377850, 803094926, 3052424080, 11653580124]


def report(n, ok, detail, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def timed(fn, *a):
    t0 = time.perf_counter()
    v = fn(*a)
    return v, time.perf_counter() - t0


# -- the checks --------------------------------------------------------------------

def check_1():
    # fresh caches so the timing covers the whole computation
    cf.q_series.cache_clear()
    cf.pp2_gf.cache_clear()
    got, dt = timed(lambda: cf.pp2_gf(20).scalars()[2:])
    return got == PP2 and dt < 1, f"PP2 t^2..t^20 exact={got == PP2}, {dt:.2f}s < 1s"


def check_2():
    cf.q_series.cache_clear()
    cf.pp3_gf.cache_clear()
    cf.R_one.cache_clear()
    t0 = time.perf_counter()
    kernel = cf.pp3_gf(20).scalars()[2:]
    R = fs.solve_feqR(20).evaluate(u=1, w=1)
    iterated = (cf.one_sided_gf(20) + cf.bargraph_one(20) + R).scale(2).scalars()[2:]
    dt = time.perf_counter() - t0
    ok = kernel == PP3 and iterated == PP3 and dt < 10
    return ok, f"kernel sum={kernel == PP3}, iteration={iterated == PP3}, {dt:.2f}s < 10s"


def check_3():
    t0 = time.perf_counter()
    pp2 = cf.pp2_gf(10).scalars()
    pp3 = cf.pp3_gf(10).scalars()
    F = fs.class_F_counts(8)
    bad = []
    for m in range(2, 11):
        if oracle.count(m, "two") != pp2[m]:
            bad.append(("two", m))
        if oracle.count(m, "three") != pp3[m]:
            bad.append(("three", m))
    for m in range(2, 9):
        if oracle.count(m, "all") != 8 * F[m]:
            bad.append(("all", m))
    dt = time.perf_counter() - t0
    return not bad and dt < 120, f"mismatches {bad}, {dt:.1f}s < 120s"


def check_4():
    t0 = time.perf_counter()
    r, A, s = asy.rho(), asy.amplitude_A(), asy.sigma()
    digits = (abs(r.value - 0.2955977) < 1e-6 and abs(A.value - 0.8548166) < 1e-6
              and abs(s.value - 0.2441312) < 1e-6)
    residuals = max(abs(asy.rho_poly(r.value)), abs(asy.tau_poly(asy.tau().value)))
    ladder = [asy.sigma_n(n) for n in range(11)]
    increasing = all(a.value < b.value for a, b in zip(ladder, ladder[1:])) and ladder[-1].value < r.value
    residuals = max([residuals] + [c.residual for c in ladder])
    qv, inv = asy.q_at_rho()
    dt = time.perf_counter() - t0
    ok = digits and residuals < 1e-12 and increasing and abs(qv - inv) < 1e-10 and dt < 1
    return ok, (f"digits={digits}, max residual {residuals:.1e}, sigma_N increasing={increasing}, "
                f"|q(rho)-1/sqrt(rho)|={abs(qv - inv):.1e}, {dt:.2f}s")


def check_5():
    t0 = time.perf_counter()
    c2 = cf.pp2_gf(400).scalars()
    mu2, amp2 = asy.growth_estimate(c2)
    c3 = cf.pp3_gf(200).scalars()
    mu3, kappa = asy.growth_estimate(c3)
    dt = time.perf_counter() - t0
    e2 = abs(mu2 * asy.rho().value - 1)
    ea = abs(amp2 / asy.amplitude_A().value - 1)
    e3 = abs(mu3 * asy.sigma().value - 1)
    ok = e2 < 1e-3 and ea < 0.02 and e3 < 5e-3 and dt < 30
    return ok, (f"pp2 rate err {e2:.1e}, amplitude err {ea:.1e}, pp3 rate err {e3:.1e} "
                f"(kappa ~ {kappa:.4f}), {dt:.1f}s < 30s")


def check_6():
    N = 40
    t0 = time.perf_counter()
    q = cf.q_series(N)
    t = cf._t(N)
    quad = (t * q * q - (1 + t * t) * q + 1).iszero()
    forms = True
    try:
        cf.R_diag_gf(N, symbolic=True, check_forms=True)
    except cf.IdentityError:
        forms = False
    powers = cf.powers_of_q_identities(N).ok
    positive = cf.check_positivity(N).ok
    bars = cf.bargraph_gf(N) == fs.solve_feqB(N).evaluate(w=1)
    dt = time.perf_counter() - t0
    ok = quad and forms and powers and positive and bars and dt < 30
    return ok, (f"quadratic={quad}, K/L forms={forms}, powers of q={powers}, "
                f"positivity={positive}, B closed form=iterate: {bars}, {dt:.1f}s < 30s")


def check_7():
    parts = {}
    t0 = time.perf_counter()
    B = cf.bargraph_one(27).scalars()[2:]
    R = cf.R_one(27).scalars()[2:]
    F = fs.class_F_counts(27)[2:]
    parts["levels"] = (sampler.level_counts("two", 25) == B and sampler.level_counts("three", 25) == R
                       and sampler.level_counts("all", 25) == F)
    exhaustive_ok = True
    for cls, ocls in (("two", "two"), ("three", "three"), ("all", "classF")):
        for m in range(2, 8):
            polys = sampler.exhaustive(cls, m)
            sets = {frozenset(p.cells) for p in polys}
            want = {r.cells for r in oracle.enumerate_polygons(m, ocls, keep=True).records
                    if r.endpoint == (1, 0) and r.orientation == "cw"}
            exhaustive_ok &= len(sets) == len(polys) == len(want) and sets == want
            for p in polys:
                sampler.validate_polygon(p, cls, m)
    parts["exhaustive"] = exhaustive_ok
    u2 = sampler.uniformity_test("two", 6, 10 ** 5, seed=2024)
    u3 = sampler.uniformity_test("three", 8, 10 ** 5, seed=2024)
    parts["chi2"] = u2.pvalue > 1e-3 and u3.pvalue > 1e-3
    smoke = {}
    for cls, m in (("two", 250), ("three", 250), ("all", 80)):
        s0 = time.perf_counter()
        for smp in sampler.sample_many(cls, m, 4, seed=7):
            sampler.validate_polygon(smp.polygon, cls, m)
        smoke[f"{cls}@{m}"] = round(time.perf_counter() - s0, 1)
    parts["smoke"] = all(v < 60 for v in smoke.values())
    dt = time.perf_counter() - t0
    ok = all(parts.values())
    return ok, (f"levels<=25 {parts['levels']}, exhaustive m<=7 {exhaustive_ok}, "
                f"chi2 p={u2.pvalue:.3f}/{u3.pvalue:.3f} ({u2.bins}/{u3.bins} bins), "
                f"smoke {smoke}s, total {dt:.1f}s")


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7]


@pytest.mark.parametrize("n", range(1, 8))
def test_criterion(n, capsys):
    ok, detail = CHECKS[n - 1]()
    assert report(n, ok, detail, capsys), detail


if __name__ == "__main__":
    results = [report(n, *check()) for n, check in enumerate(CHECKS, 1)]
    sys.exit(0 if all(results) else 1)
