"""Explicit generating functions for bar graphs, two- and three-sided polygons.

Everything here is expanded exactly as :class:`TruncatedSeries`.  Divisions
by powers of ``t`` (and by ``u`` in the bar-graph formula) are exact shifts
that assert the discarded low-order part vanishes.

The diagonal series ``R(t, w, w)`` of generic three-sided polygons is built
from the kernel-method iteration

    R(t, w, w) = sum_k L((t q^2)^k w) * prod_{j<k} K((t q^2)^j w)

where ``q`` is the power-series root of the kernel.  ``K`` and ``L`` are
available in two algebraically equivalent forms; both are computed and
compared.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact_series import TruncatedSeries, t_series


class IdentityError(AssertionError):
    """An algebraic identity that must hold exactly failed."""


def _t(N):
    return t_series(N)




def _poly(coeffs, N):
    """Scalar polynomial ``sum coeffs[i] t^i``."""
    return TruncatedSeries.from_scalars(coeffs, N)


def _divide(num, den):
    """Exact quotient of series where ``den`` may have positive valuation.

    The result has order ``min(order) - val(den)``.
    """
    v = den.valuation()
    if v == float("inf"):
        raise ZeroDivisionError("division by the zero series")
    if v:
        num, den = num.shift(-v), den.shift(-v)
    order = min(num.order, den.order)
    return num.truncate(order) * den.truncate(order).recip()


@lru_cache(maxsize=None)
def q_series(N):
    """``q = (t^2 + 1 - sqrt(1 - 4t + 2t^2 + t^4)) / (2t)`` to order ``N``."""
    M = N + 1
    rad = _poly([1, -4, 2, 0, 1], M)
    num = _poly([1, 0, 1], M) - rad.sqrt()
    q = _half(num.shift(-1))
    t = _t(N)
    check = t * q * q - (1 + t * t) * q + 1
    if not check.iszero():
        raise IdentityError("q does not satisfy t q^2 - (1 + t^2) q + 1 = 0")
    return q


def _half(s):
    return s.scale(Fraction(1, 2))


def _radicand(N):
    """``t^2 (1-t)^2 u^2 - 2t(1-t^2) u + (1-t)^2`` as a series in ``t, u``."""
    terms = {}
    for n, c in enumerate([1, -2, 1]):          # t^2 (1-t)^2 u^2
        terms[(n + 2, 2, 0, 0)] = c
    for n, c in enumerate([-2, 0, 2]):          # -2t (1-t^2) u
        terms[(n + 1, 1, 0, 0)] = c
    for n, c in enumerate([1, -2, 1]):          # (1-t)^2
        terms[(n, 0, 0, 0)] = terms.get((n, 0, 0, 0), 0) + c
    return TruncatedSeries.from_terms(terms, N)


@lru_cache(maxsize=None)
def q_two_var(N):
    """Kernel root ``q(t, u)`` of the bar-graph equation, to order ``N``."""
    M = N + 1
    # 1 + (1 - u) t + u t^2
    lin = TruncatedSeries.from_terms({(0, 0, 0, 0): 1, (1, 0, 0, 0): 1,
                                      (1, 1, 0, 0): -1, (2, 1, 0, 0): 1}, M)
    num = lin - _radicand(M).sqrt()
    q = _half(num.shift(-1))
    if q.evaluate(u=1) != q_series(N):
        raise IdentityError("q(t, 1) differs from q(t)")
    return q


def bargraph_kernel(N):
    """Kernel ``t^2 u w (1-w) - u w t (1-w t) - (1-w)(1-w t)`` in ``t, u, w``."""
    terms = {}

    def put(n, i, j, c):
        terms[(n, i, j, 0)] = terms.get((n, i, j, 0), 0) + c

    # t^2 u w (1 - w)
    put(2, 1, 1, 1)
    put(2, 1, 2, -1)
    # -u w t (1 - w t)
    put(1, 1, 1, -1)
    put(2, 1, 2, 1)
    # -(1 - w)(1 - w t) = -1 + w t + w - w^2 t
    put(0, 0, 0, -1)
    put(1, 0, 1, 1)
    put(0, 0, 1, 1)
    put(1, 0, 2, -1)
    return TruncatedSeries.from_terms(terms, N)


@lru_cache(maxsize=None)
def bargraph_gf(N):
    """``B(t, u)``: bar graphs by half-perimeter (``t``) and width (``u``)."""
    M = N + 1
    # 1 - t - u (1 + t) t
    lin = TruncatedSeries.from_terms({(0, 0, 0, 0): 1, (1, 0, 0, 0): -1,
                                      (1, 1, 0, 0): -1, (2, 1, 0, 0): -1}, M)
    num = lin - _radicand(M).sqrt()
    try:
        B = num.shift(-1).divide_by_var("u")
    except ArithmeticError as exc:
        raise IdentityError(f"bar-graph numerator not divisible by 2tu: {exc}") from exc
    return _half(B)


def bargraph_at(v, N):
    """``B(t, v)`` for a scalar series ``v`` by evaluating the closed form.

    ``v`` must be given to order at least ``N + 1 + val(v)`` and have a unit
    leading coefficient; the result has order ``N``.
    """
    j = v.valuation()
    M = N + 1 + j
    v = v.truncate(M)
    t = _t(M)
    rad = (t * t * (1 - t) * (1 - t)) * v * v - 2 * t * (1 - t * t) * v + (1 - t) * (1 - t)
    num = 1 - t - v * (1 + t) * t - rad.sqrt()
    B = _half(_divide(num.shift(-1), v))
    return B.truncate(N)


@lru_cache(maxsize=None)
def bargraph_one(N):
    """``B(t, 1)``, from the closed form at ``u = 1``."""
    return bargraph_at(TruncatedSeries.constant(1, N + 1), N)


@lru_cache(maxsize=None)
def one_sided_gf(N):
    """Rows of cells, ``t^2 / (1 - t)``; one polygon per shape."""
    return _poly([0, 0] + [1] * (N - 1), N) if N >= 2 else TruncatedSeries.zero(N)


@lru_cache(maxsize=None)
def pp2_closed(N):
    """Two-sided polygons from the radical expression."""
    M = N + 1
    t = _t(M)
    lhs = _poly([1, -3, 1, 3], M) * (1 - t).recip()
    rad = (1 - t) * _poly([1, -3, -1, -1], M)
    return (lhs - rad.sqrt()).shift(-1)


@lru_cache(maxsize=None)
def pp2_gf(N):
    """Two-sided prudent polygons counted by half-perimeter."""
    closed = pp2_closed(N)
    assembled = (one_sided_gf(N) + bargraph_one(N)).scale(2)
    if closed != assembled:
        raise IdentityError("PP2 closed form disagrees with 2 (t^2/(1-t) + B(t,1))")
    return closed


# -- kernel-method objects ---------------------------------------------------

@dataclass(frozen=True)
class WSpec:
    """Argument of ``K``/``L``: ``(t q^2)^power``, times ``w`` if ``symbolic``."""

    power: int = 0
    symbolic: bool = True

    def series(self, q):
        N = q.order
        base = (_t(N) * q * q) ** self.power
        if self.symbolic:
            base = base * TruncatedSeries.monomial(0, w=1, order=N)
        return base


def _b_at_qw(spec, N, method):
    """``B(t, q W)`` for the argument ``W`` described by ``spec``."""
    if method == "subst":
        q = q_series(N)
        g = q ** (2 * spec.power + 1)
        mono = (0, 1, 0) if spec.symbolic else (0, 0, 0)
        return bargraph_gf(N).subst("u", g, mono=mono, tshift=spec.power)
    if method == "compose":
        if spec.symbolic:
            raise ValueError("compose method needs a scalar argument")
        M = N + 1 + spec.power
        q = q_series(M)
        v = q ** (2 * spec.power + 1) * (_t(M) ** spec.power)
        return bargraph_at(v, N)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class KernelPieces:
    K: TruncatedSeries
    L: TruncatedSeries
    K_alt: TruncatedSeries
    L_alt: TruncatedSeries


def _kl_forms(spec, N, method="subst", alternative=True):
    """Primary and (optionally) alternative forms of ``K`` and ``L``."""
    # alternative forms divide by a series of valuation 1: work one order higher
    M = N + 1 if alternative else N
    q = q_series(M)
    t = _t(M)
    W = spec.series(q)
    BW = (_b_at_qw(spec, M, method) + t) * W
    den = 1 - t * (1 + t) * q - (t * _poly([1, -1, 0, -1], M) * q + t * t) * BW
    if den.coeffs[0] != TruncatedSeries.constant(1, 0).coeffs[0]:
        raise ArithmeticError("denominator of K/L does not start with 1")
    inv = den.recip()
    K = ((1 - t) * q - 1 - (_poly([1, -1, 1], M) * q - 1) * BW) * inv
    L = (1 + t * t - _poly([1, -2, 2, 0, 1], M) * q) * BW * inv
    K, L = K.truncate(N), L.truncate(N)
    if not alternative:
        return KernelPieces(K, L, None, None)
    one_q = 1 - q
    one_qt = 1 - q * t
    common = q * one_qt * one_qt * (one_q * q * t * BW + t)
    K_alt = _divide((one_q * one_qt * q * t * BW + t * t * q * (q - 1)) * (q - 1), common)
    L_alt = _divide(one_qt * (1 - q * q * t) * (q - 1) * q * t * BW, common)
    return KernelPieces(K, L, K_alt.truncate(N), L_alt.truncate(N))


def K_series(spec, N, method="subst", check=True):
    """``K(W)`` to order ``N``; with ``check`` the two forms must agree."""
    pieces = _kl_forms(spec, N, method, alternative=check)
    if check and pieces.K != pieces.K_alt:
        raise IdentityError(f"K primary and alternative forms differ for {spec}")
    return pieces.K


def L_series(spec, N, method="subst", check=True):
    """``L(W)`` to order ``N``; with ``check`` the two forms must agree."""
    pieces = _kl_forms(spec, N, method, alternative=check)
    if check and pieces.L != pieces.L_alt:
        raise IdentityError(f"L primary and alternative forms differ for {spec}")
    return pieces.L


def R_diag_gf(N, symbolic=False, method=None, check_forms=False):
    """``R(t, w, w)`` (or ``R(t, 1, 1)`` when not ``symbolic``) to order ``N``.

    Terms are added until the running product of ``K`` factors has
    valuation above ``N``.  For scalar arguments each factor is only
    expanded to the precision the running product still needs.
    """
    if method is None:
        method = "subst" if symbolic else "compose"
    total = TruncatedSeries.zero(N)
    prod = TruncatedSeries.constant(1, N)
    last_val = -1
    k = 0
    while True:
        v = prod.valuation()
        if v > N:
            break
        if v <= last_val:
            raise IdentityError("running product valuation failed to increase")
        last_val = v
        need = N - v
        pieces = _kl_forms(WSpec(k, symbolic), need, method, alternative=check_forms)
        if check_forms and (pieces.K != pieces.K_alt or pieces.L != pieces.L_alt):
            raise IdentityError(f"K/L forms differ at k={k}")
        # coefficients above `need` cannot reach t^N once multiplied by prod
        total = total + TruncatedSeries(pieces.L.coeffs, N) * prod
        prod = TruncatedSeries(pieces.K.coeffs, N) * prod
        k += 1
    return total


@lru_cache(maxsize=None)
def R_one(N):
    """``R(t, 1, 1)``."""
    return R_diag_gf(N)


@lru_cache(maxsize=None)
def pp3_gf(N):
    """Three-sided prudent polygons: ``2 (t^2/(1-t) + B(t,1) + R(t,1,1))``."""
    return (one_sided_gf(N) + bargraph_one(N) + R_one(N)).scale(2)


def R_iteration_residual(N):
    """``R(w) - K(w) R(w t q^2) - L(w)`` with symbolic ``w``; zero if consistent."""
    q = q_series(N)
    R = R_diag_gf(N, symbolic=True)
    # w -> w t q^2, routed through u since a substitution may not reuse its variable
    shifted = R.rename(w="u").subst("u", q * q, mono=(0, 1, 0), tshift=1)
    K = K_series(WSpec(0, True), N, check=False)
    L = L_series(WSpec(0, True), N, check=False)
    return R - K * shifted - L


# -- identities --------------------------------------------------------------

@dataclass
class IdentityReport:
    results: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.results.values())

    def failures(self):
        return [k for k, v in self.results.items() if not v]


def powers_of_q_identities(N):
    """Check the expressions of ``q^2, q^3, q^4`` in terms of ``q``."""
    if N < 2:
        raise ValueError("need N >= 2")
    q = q_series(N)
    t = _t(N)
    q2, q3, q4 = q * q, q * q * q, q * q * q * q
    rep = IdentityReport()
    rep.results["q^2"] = (t * t * q2 - t * (t * t + 1) * q + t).iszero()
    rep.results["q^3"] = (t ** 3 * q3 - t * _poly([1, -1, 2, 0, 1], N) * q + t ** 3 + t).iszero()
    rep.results["q^4"] = (t ** 4 * q4 - t * q * _poly([1, -2, 3, -2, 3, 0, 1], N)
                          - _poly([0, -1, 1, -2, 0, -1], N)).iszero()
    return rep


def positivity_series(N):
    """The five series asserted to have nonnegative integer coefficients."""
    q = q_series(N)
    t = _t(N)
    return {
        "q": q,
        "(1-t)q-1": (1 - t) * q - 1,
        "q^2 t": q * q * t,
        "t(1+t)q": t * (1 + t) * q,
        "t(1-t-t^3)q+t^2": t * _poly([1, -1, 0, -1], N) * q + t * t,
    }


def check_positivity(N):
    rep = IdentityReport()
    for name, s in positivity_series(N).items():
        vals = s.scalars()
        rep.results[name] = all(type(c) is int and c >= 0 for c in vals)
    return rep


class GfCatalog:
    """Lazily computed, cached generating functions at a fixed order."""

    def __init__(self, N=40):
        self.N = N

    @property
    def q(self):
        return q_series(self.N)

    @property
    def bargraph(self):
        return bargraph_gf(self.N)

    @property
    def bargraph_one(self):
        return bargraph_one(self.N)

    @property
    def pp2(self):
        return pp2_gf(self.N)

    @property
    def R_one(self):
        return R_one(self.N)

    @property
    def R_diag(self):
        return R_diag_gf(self.N, symbolic=True)

    @property
    def pp3(self):
        return pp3_gf(self.N)

    @property
    def one_sided(self):
        return one_sided_gf(self.N)
