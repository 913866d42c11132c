"""Singularities, amplitudes and growth-rate estimates.

Everything is plain float arithmetic with bisection, except :func:`q_at_rho`:
at ``t = rho`` the radicand of ``q`` vanishes, so a float evaluation keeps
only about half of the digits and the check uses :mod:`decimal` instead.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

BRACKET = 1e-13
RESIDUAL = 1e-12


@dataclass(frozen=True)
class Constant:
    name: str
    value: float
    residual: float
    bracket: tuple

    def __float__(self):
        return self.value


class BracketError(ArithmeticError):
    pass


def bisect(f, lo, hi, tol=BRACKET):
    """Root of ``f`` in ``[lo, hi]`` by bisection; returns the final bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {flo}, {fhi}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    # float exhaustion: keep going to adjacent doubles
    while True:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            return lo, hi
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid


def _root_constant(name, f, lo, hi, transform=None):
    a, b = bisect(f, lo, hi)
    x = (a + b) / 2
    res = abs(f(x))
    if transform:
        return Constant(name, transform(x), res, (transform(a), transform(b)))
    return Constant(name, x, res, (a, b))


# -- two-sided -----------------------------------------------------------------

def rho_poly(t):
    return 1 - 3 * t - t * t - t ** 3


def theta():
    return (26 + 6 * math.sqrt(33)) ** (1 / 3)


def rho_closed_form():
    th = theta()
    return (th * th - th - 8) / (3 * th)


def rho():
    """Radius of convergence of the two-sided series: root of ``1 - 3t - t^2 - t^3``."""
    c = _root_constant("rho", rho_poly, 0.0, 1.0)
    closed = rho_closed_form()
    if abs(closed - c.value) > 1e-12:
        raise ArithmeticError(f"rho: bisection {c.value!r} vs closed form {closed!r}")
    return c


def amplitude_A():
    th = theta()
    s = math.sqrt(33)
    r = rho_closed_form()
    v = math.sqrt((-37 + 11 * s) * th ** 2 + (-152 + 8 * s) * th + 32) / (4 * math.sqrt(6 * math.pi) * r)
    return Constant("A", v, 0.0, (v, v))


# -- q, u and the bar-graph closed form as functions of a real t ----------------

def q(t):
    """``q(t) = (t^2 + 1 - sqrt(1 - 4t + 2t^2 + t^4)) / (2t)`` for ``0 < t <= rho``."""
    # radicand = (1 - t)(1 - 3t - t^2 - t^3); clip rounding noise at the branch point
    rad = max((1 - t) * rho_poly(t), 0.0)
    return (t * t + 1 - math.sqrt(rad)) / (2 * t)


def u_singular(t):
    """The branch ``u(t)`` of the singular curve of ``B(t, u)`` with ``u(rho) = 1``."""
    s = math.sqrt(t)
    return (1 - s) / (t * (1 + s))


def bargraph(t, u):
    """Closed form of ``B(t, u)`` at real ``0 < t < 1`` (principal square root).

    The radicand is evaluated in factored form
    ``t^2 (1-t)^2 (u - u+)(u - u-)`` with ``u-+ = (1 -+ sqrt t) / (t (1 +- sqrt t))``,
    which stays accurate next to the singular curve ``u = u-``.
    """
    s = math.sqrt(t)
    lo, hi = (1 - s) / (t * (1 + s)), (1 + s) / (t * (1 - s))
    rad = t * t * (1 - t) ** 2 * (u - hi) * (u - lo)
    return (1 - t - u * (1 + t) * t - math.sqrt(max(rad, 0.0))) / (2 * t * u)


def singular_curve_residuals(ts=(0.05, 0.1, 0.2)):
    """``B(t, u(t)) - sqrt(t)`` for each ``t``; all should vanish."""
    return {t: bargraph(t, u_singular(t)) - math.sqrt(t) for t in ts}


def q_at_rho(digits=50):
    """``q(rho)`` to ``digits`` significant digits (as a float) and ``1/sqrt(rho)``."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        one = Decimal(1)
        f = lambda t: one - 3 * t - t * t - t * t * t
        lo, hi = Decimal(0), one
        for _ in range(int(digits * 3.4) + 10):
            mid = (lo + hi) / 2
            if f(mid) > 0:
                lo = mid
            else:
                hi = mid
        r = (lo + hi) / 2
        rad = (one - 4 * r + 2 * r * r + r ** 4)
        qv = (r * r + 1 - max(rad, Decimal(0)).sqrt()) / (2 * r)
        return float(qv), float(one / r.sqrt())


# -- three-sided ---------------------------------------------------------------

def tau_poly(t):
    return t ** 5 + 2 * t * t + 3 * t - 2


def sigma():
    """Dominant singularity of the three-sided series: ``tau^2``."""
    c = _root_constant("tau", tau_poly, 0.0, 1.0)
    lo, hi = c.bracket
    return Constant("sigma", c.value ** 2, c.residual, (lo * lo, hi * hi))


def tau():
    return _root_constant("tau", tau_poly, 0.0, 1.0)


def sigma_n(n, eps=1e-9):
    """Root in ``(0, rho)`` of ``u(t) = q(t) (q(t)^2 t)^n``."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def f(t):
        qt = q(t)
        return u_singular(t) - qt * (qt * qt * t) ** n

    r = rho().value
    try:
        return _root_constant(f"sigma_{n}", f, eps, r - eps)
    except BracketError as exc:
        raise BracketError(f"sigma_{n}: {exc}") from exc


def full_perimeter_rates():
    """Growth rates per unit of full perimeter: ``1/sqrt(rho)`` and ``1/sqrt(sigma)``."""
    return {"two": 1 / math.sqrt(rho().value), "three": 1 / math.sqrt(sigma().value)}


# -- estimates from coefficients -------------------------------------------------

MODELS = ("pure-exponential", "exp-times-power")


def _aitken(x):
    """Aitken's delta-squared on the last three terms of ``x``."""
    a, b, c = x[-3:]
    d = (c - b) - (b - a)
    if d == 0:
        return c
    return c - (c - b) ** 2 / d


def growth_estimate(coeffs, model="exp-times-power", exponent=-1.5, rate=None):
    """Estimate ``(mu, amplitude)`` for ``c_m ~ amplitude * mu^m * m^exponent``.

    ``coeffs[m]`` is the coefficient of ``t^m``.  The rate comes from the
    ratios ``c_m / c_(m-1)``, corrected by ``(m/(m-1))^(-exponent)`` under the
    power-law model, then Aitken-accelerated.  The amplitude is
    ``a_m = c_m mu^-m m^-exponent`` extrapolated by ``2 a_(2M) - a_M`` (the
    ``1/m`` term cancels); ``rate`` overrides the estimated ``mu`` there.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    c = list(coeffs)
    M = len(c) - 1
    nonzero = [m for m in range(len(c)) if c[m]]
    if len(nonzero) < 20:
        raise ValueError("need at least 20 nonzero coefficients")
    g = 0.0 if model == "pure-exponential" else -exponent
    ratios = []
    for m in range(max(nonzero[0] + 1, M - 10), M + 1):
        r = c[m] / c[m - 1]
        if g:
            r *= (m / (m - 1)) ** g
        ratios.append(r)
    mu = _aitken(ratios)
    if model == "pure-exponential" and all(abs(x - ratios[-1]) <= 1e-15 * abs(x) for x in ratios):
        mu = ratios[-1]
    mu_amp = mu if rate is None else rate

    def a(m):
        return math.exp(math.log(c[m]) - m * math.log(mu_amp) + g * math.log(m))

    if g:
        half = M // 2
        amp = 2 * a(2 * half) - a(half)
    else:
        amp = a(M)
    return mu, amp


def scaled_coefficients(coeffs, mu, ms, exponent=-1.5):
    """``c_m mu^-m m^-exponent`` at each ``m`` in ``ms`` (big ints via logs)."""
    return [math.exp(math.log(coeffs[m]) - m * math.log(mu) - exponent * math.log(m)) for m in ms]
