"""Exact truncated power series in ``t`` with catalytic coefficients.

A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``t^0 .. t^N``.  Each coefficient is a :class:`CatalyticPolynomial`, a sparse
map from exponent triples ``(deg_u, deg_w, deg_x)`` to exact rationals.

Rationals are Python ``int`` when integral and :class:`fractions.Fraction`
otherwise; both are stored in lowest terms, so integer-only computations (the
common case here) never pay for fraction arithmetic.
"""

from fractions import Fraction
from numbers import Rational

VARS = {"u": 0, "w": 1, "x": 2}
ONE = (0, 0, 0)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _var_index(var):
    try:
        return VARS[var]
    except KeyError:
        raise ValueError(f"unknown catalytic variable {var!r}") from None



class CatalyticPolynomial(dict):
    """Sparse polynomial in ``u, w, x``: ``{(i, j, k): coefficient}``.

    Zero coefficients are never stored.  Instances are treated as immutable
    once they are handed to a series.
    """

    __slots__ = ()

    @classmethod
    def constant(cls, c):
        c = _norm(c)
        return cls({ONE: c}) if c else cls()

    def is_scalar(self):
        return not self or (len(self) == 1 and ONE in self)

    def scalar(self):
        if not self.is_scalar():
            raise ValueError("coefficient depends on catalytic variables")
        return self.get(ONE, 0)

    def degree(self, var=None):
        if not self:
            return -1
        if var is None:
            return max(sum(m) for m in self)
        i = _var_index(var)
        return max(m[i] for m in self)

    def evaluate(self, u=1, w=1, x=1):
        return _norm(sum(c * u ** m[0] * w ** m[1] * x ** m[2]
                         for m, c in self.items()))

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for m, c in sorted(self.items()):
            mono = "*".join(f"{v}^{e}" if e > 1 else v
                            for v, e in zip("uwx", m) if e)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _padd(acc, poly, scale=1):
    for m, c in poly.items():
        v = acc.get(m, 0) + c * scale
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)




def _freeze(d):
    return CatalyticPolynomial({m: _norm(c) for m, c in d.items() if c})


class TruncatedSeries:
    """Power series in ``t`` modulo ``t^(order+1)``.

    Arithmetic operators require equal orders; scalars (ints, Fractions) are
    promoted to constant series.
    """

    __slots__ = ("order", "coeffs", "_scalar")

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = coeffs[:order + 1]
        coeffs += [{}] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(c if isinstance(c, CatalyticPolynomial) else _freeze(c)
                            for c in coeffs)
        self._scalar = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def constant(cls, c, order):
        return cls([CatalyticPolynomial.constant(c)], order)

    @classmethod
    def from_scalars(cls, values, order=None):
        values = list(values)
        if order is None:
            order = len(values) - 1
        return cls([CatalyticPolynomial.constant(v) for v in values[:order + 1]], order)

    @classmethod
    def monomial(cls, n, u=0, w=0, x=0, coeff=1, order=None):
        """``coeff * t^n * u^u * w^w * x^x`` truncated at ``order``."""
        if order is None:
            raise ValueError("order is required")
        coeffs = [{} for _ in range(order + 1)]
        if n <= order and coeff:
            coeffs[n] = {(u, w, x): coeff}
        return cls(coeffs, order)

    @classmethod
    def from_terms(cls, terms, order):
        """Build from ``{(n, i, j, k): c}``; terms beyond ``order`` are dropped."""
        coeffs = [{} for _ in range(order + 1)]
        for (n, i, j, k), c in terms.items():
            if n <= order and c:
                coeffs[n][(i, j, k)] = coeffs[n].get((i, j, k), 0) + c
        return cls(coeffs, order)

    # -- inspection -------------------------------------------------------

    def is_scalar(self):
        if self._scalar is None:
            self._scalar = all(c.is_scalar() for c in self.coeffs)
        return self._scalar

    def scalars(self):
        """Coefficient list of a series with no catalytic dependence."""
        return [c.scalar() for c in self.coeffs]

    def __getitem__(self, n):
        return self.coeffs[n]

    def valuation(self):
        """Smallest ``n`` with a nonzero coefficient, ``math.inf`` for zero."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return float("inf")

    def iszero(self):
        return not any(self.coeffs)

    def terms(self):
        """Iterate ``(n, (i, j, k), c)`` over all nonzero terms."""
        for n, poly in enumerate(self.coeffs):
            for m, c in poly.items():
                yield n, m, c

    def nterms(self):
        return sum(len(c) for c in self.coeffs)

    def max_degree(self, var=None):
        return max((c.degree(var) for c in self.coeffs), default=-1)

    def is_integral(self):
        return all(type(c) is int for _, _, c in self.terms())

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, tuple(frozenset(c.items()) for c in self.coeffs)))

    def __repr__(self):
        shown = [f"({c})*t^{n}" for n, c in enumerate(self.coeffs) if c][:6]
        more = " + ..." if sum(1 for c in self.coeffs if c) > 6 else ""
        return f"TruncatedSeries[{self.order}](" + (" + ".join(shown) or "0") + more + ")"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, Rational):
            return TruncatedSeries.constant(other, self.order)
        return NotImplemented

    def add(self, other, scale=1):
        other = self._coerce(other)
        out = []
        for a, b in zip(self.coeffs, other.coeffs):
            if not b:
                out.append(a)
                continue
            d = dict(a)
            _padd(d, b, scale)
            out.append(_freeze(d))
        return TruncatedSeries(out, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.add(other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.add(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _norm(c)
        if not c:
            return TruncatedSeries.zero(self.order)
        return TruncatedSeries([{m: v * c for m, v in p.items()} for p in self.coeffs],
                               self.order)

    def mul(self, other, cap=None):
        """Cauchy product mod ``t^(N+1)``.

        With ``cap`` set, terms of total catalytic degree above ``cap`` are
        dropped from the product.
        """
        other = self._coerce(other)
        N = self.order
        if self.is_scalar() and other.is_scalar():
            return TruncatedSeries.from_scalars(_convolve(self.scalars(), other.scalars(), N), N)
        a, b = self.coeffs, other.coeffs
        nza = [n for n in range(N + 1) if a[n]]
        nzb = [n for n in range(N + 1) if b[n]]
        out = [{} for _ in range(N + 1)]
        for i in nza:
            ai = a[i]
            for j in nzb:
                if i + j > N:
                    break
                acc = out[i + j]
                for ma, ca in ai.items():
                    for mb, cb in b[j].items():
                        m = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
                        if cap is not None and m[0] + m[1] + m[2] > cap:
                            continue
                        v = acc.get(m, 0) + ca * cb
                        if v:
                            acc[m] = v
                        else:
                            del acc[m]
        return TruncatedSeries(out, N)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            return self.recip() ** (-k)
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, order):
        """Reinterpret at a (usually lower) truncation order."""
        return TruncatedSeries(self.coeffs, order)

    def shift(self, k):
        """Multiply by ``t^k`` (``k >= 0``) or divide exactly by ``t^-k``.

        Division asserts that the coefficients shifted out are zero; the top
        ``|k|`` coefficients of the quotient are then unknown and the result
        is returned at order ``N - |k|``.
        """
        N = self.order
        if k >= 0:
            return TruncatedSeries([{}] * k + list(self.coeffs[:N + 1 - k]), N)
        k = -k
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"series is not divisible by t^{k}")
        return TruncatedSeries(self.coeffs[k:], N - k)

    def recip(self):
        """Multiplicative inverse; the constant term must be a nonzero scalar."""
        c0 = self.coeffs[0]
        if not c0 or not c0.is_scalar():
            raise ZeroDivisionError("constant term is not an invertible scalar")
        N = self.order
        if self.is_scalar():
            return TruncatedSeries.from_scalars(_recip_scalars(self.scalars(), N), N)
        inv0 = _norm(Fraction(1) / c0.scalar())
        r = TruncatedSeries.constant(inv0, 0)
        prec = 0
        while prec < N:
            prec = min(2 * prec + 1, N)
            a = self.truncate(prec)
            r = r.truncate(prec)
            r = r * (2 - a * r)
        return r.truncate(N)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.recip()

    def sqrt(self):
        """Square root with positive constant term, by Newton iteration.

        The constant term must be the square of a nonzero rational.
        """
        c0 = self.coeffs[0]
        if not c0 or not c0.is_scalar():
            raise ValueError("constant term must be a nonzero scalar")
        s0 = _rational_sqrt(c0.scalar())
        N = self.order
        s = TruncatedSeries.constant(s0, 0)
        prec = 0
        while prec < N:
            prec = min(2 * prec + 1, N)
            a = self.truncate(prec)
            s = s.truncate(prec)
            s = (s + a / s) * Fraction(1, 2)
        return s.truncate(N)

    # -- catalytic manipulations -------------------------------------------

    def map_monomials(self, fn):
        """Apply a monomial map ``fn(n, (i, j, k)) -> (n', (i', j', k'), factor)``.

        The map must send ``t^n`` to ``t^n'`` with ``n' >= 0``; images past
        the truncation order are dropped.  ``fn`` may return ``None`` to drop
        a term.
        """
        N = self.order
        out = [{} for _ in range(N + 1)]
        for n, poly in enumerate(self.coeffs):
            for m, c in poly.items():
                img = fn(n, m)
                if img is None:
                    continue
                n2, m2, f = img
                if n2 > N:
                    continue
                acc = out[n2]
                v = acc.get(m2, 0) + c * f
                if v:
                    acc[m2] = v
                else:
                    del acc[m2]
        return TruncatedSeries(out, N)

    def rename(self, u="u", w="w", x="x", tshift=None):
        """Simultaneous substitution of each variable by a catalytic monomial.

        ``u``, ``w``, ``x`` name the image of each variable: a variable name,
        ``1``, or a product given as a tuple of names.  ``tshift`` maps a
        variable to an extra power of ``t`` per unit degree, e.g.
        ``rename(u="x", w="x", x="w", tshift={"w": 1})`` is ``X(x, x*t, w)``.
        """
        images = [_mono_of(u), _mono_of(w), _mono_of(x)]
        shifts = [0, 0, 0]
        for var, d in (tshift or {}).items():
            shifts[_var_index(var)] = d

        def fn(n, m):
            out = [0, 0, 0]
            extra = 0
            for idx in range(3):
                e = m[idx]
                if e:
                    img = images[idx]
                    out[0] += img[0] * e
                    out[1] += img[1] * e
                    out[2] += img[2] * e
                    extra += shifts[idx] * e
            return n + extra, tuple(out), 1

        return self.map_monomials(fn)

    def subst(self, var, g=None, mono=ONE, tshift=0):
        """Replace ``var^k`` by ``(g * mono * t^tshift)^k``.

        ``g`` is a scalar series or rational (default 1) and ``mono`` a
        catalytic exponent triple; ``mono`` must not involve ``var``.
        """
        i = _var_index(var)
        if mono[i]:
            raise ValueError("substitution would reintroduce the substituted variable")
        N = self.order
        if g is None or isinstance(g, Rational):
            c = 1 if g is None else _norm(g)

            def fn(n, m):
                e = m[i]
                mm = list(m)
                mm[i] = 0
                mm = (mm[0] + mono[0] * e, mm[1] + mono[1] * e, mm[2] + mono[2] * e)
                return n + tshift * e, mm, c ** e

            return self.map_monomials(fn)
        if g.order != N:
            raise ValueError("order mismatch")
        if not g.is_scalar():
            raise ValueError("replacement series must not depend on catalytic variables")
        # collect, per power e of var, the series of all terms carrying var^e
        parts = {}
        for n, m, c in self.terms():
            e = m[i]
            mm = list(m)
            mm[i] = 0
            mm = (mm[0] + mono[0] * e, mm[1] + mono[1] * e, mm[2] + mono[2] * e)
            n2 = n + tshift * e
            if n2 > N:
                continue
            parts.setdefault(e, [{} for _ in range(N + 1)])
            d = parts[e][n2]
            v = d.get(mm, 0) + c
            if v:
                d[mm] = v
            else:
                del d[mm]
        result = TruncatedSeries.zero(N)
        gpow = TruncatedSeries.constant(1, N)
        for e in range(max(parts, default=-1) + 1):
            if e:
                gpow = gpow * g
            if e in parts:
                result = result + TruncatedSeries(parts[e], N) * gpow
        return result

    def evaluate(self, **point):
        """Set catalytic variables to rationals, e.g. ``s.evaluate(u=1, w=1)``."""
        s = self
        for var, val in point.items():
            s = s.subst(var, val)
        return s

    def divided_difference(self, var_a, var_b=None, tshift=0):
        """``(S[a := b t^d] - S) / (b t^d - a)`` expanded by telescoping.

        ``var_b=None`` stands for the constant 1.  Each ``a^k`` becomes
        ``sum_{i<k} (b t^d)^i a^(k-1-i)``, so no division is performed.
        """
        ia = _var_index(var_a)
        ib = None if var_b is None else _var_index(var_b)
        if ib == ia:
            raise ValueError("divided difference needs two distinct variables")
        N = self.order
        out = [{} for _ in range(N + 1)]
        for n, m, c in self.terms():
            k = m[ia]
            for i in range(k):
                n2 = n + tshift * i
                if n2 > N:
                    break
                mm = list(m)
                mm[ia] = k - 1 - i
                if ib is not None:
                    mm[ib] += i
                mm = tuple(mm)
                acc = out[n2]
                v = acc.get(mm, 0) + c
                if v:
                    acc[mm] = v
                else:
                    del acc[mm]
        return TruncatedSeries(out, N)

    def divide_by_var(self, var):
        """Exact division by a catalytic variable; every term must contain it."""
        i = _var_index(var)

        def fn(n, m):
            if m[i] == 0:
                raise ArithmeticError(f"term t^{n}*{m} is not divisible by {var}")
            mm = list(m)
            mm[i] -= 1
            return n, tuple(mm), 1

        return self.map_monomials(fn)


def _mono_of(spec):
    if spec == 1 or spec is None or spec == ():
        return ONE
    if isinstance(spec, str):
        spec = (spec,)
    m = [0, 0, 0]
    for v in spec:
        m[_var_index(v)] += 1
    return tuple(m)


def _convolve(a, b, N):
    a = a[:N + 1]
    b = b[:N + 1]
    if len(a) > 24 and len(b) > 24 and all(type(c) is int for c in a) \
            and all(type(c) is int for c in b):
        return _kronecker(a, b, N)
    nzb = [(j, y) for j, y in enumerate(b) if y]
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        lim = N - i
        for j, y in nzb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def _pack(vals, nbytes):
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in vals)
    neg = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in vals)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a, b, N):
    """Integer convolution through one big-integer product."""
    bound = max(abs(v) for v in a).bit_length() + max(abs(v) for v in b).bit_length() \
        + (min(len(a), len(b))).bit_length() + 2
    nbytes = (bound + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    ncoef = min(len(a) + len(b) - 1, N + 1)
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * ncoef, "little")
    mask_bits = 8 * nbytes * ncoef
    raw = ((prod + offset) & ((1 << mask_bits) - 1)).to_bytes(nbytes * ncoef, "little")
    out = [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
           for i in range(ncoef)]
    return out + [0] * (N + 1 - ncoef)


def _recip_scalars(a, N):
    a0 = a[0]
    if type(a0) is int and abs(a0) == 1 and all(type(c) is int for c in a):
        # Newton iteration r <- r (2 - a r), doubling the precision each pass
        r = [a0]
        prec = 0
        while prec < N:
            prec = min(2 * prec + 1, N)
            ar = _convolve(a[:prec + 1], r, prec)
            e = [-c for c in ar]
            e[0] += 2
            r = _convolve(r, e, prec)
        return r
    inv0 = _norm(Fraction(1) / a0)
    r = [0] * (N + 1)
    r[0] = inv0
    nz = [(j, y) for j, y in enumerate(a) if y and j]
    for n in range(1, N + 1):
        s = 0
        for j, y in nz:
            if j > n:
                break
            s += y * r[n - j]
        r[n] = _norm(-s * inv0)
    return r


def _rational_sqrt(c):
    c = Fraction(c)
    if c <= 0:
        raise ValueError(f"constant term {c} has no positive rational square root")
    import math
    p, q = c.numerator, c.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise ValueError(f"constant term {c} is not the square of a rational")
    return _norm(Fraction(rp, rq))


# -- module-level API mirroring the operation names ---------------------------

def add(a, b):
    return a + b


def mul(a, b, cap=None):
    return a.mul(b, cap=cap)


def recip(a):
    return a.recip()


def sqrt(a):
    return a.sqrt()


def subst_catalytic(a, var, g=None, mono=ONE, tshift=0):
    return a.subst(var, g, mono, tshift)


def divided_difference(a, var_a, var_b=None, tshift=0):
    return a.divided_difference(var_a, var_b, tshift)


def t_series(order):
    """The series ``t`` itself."""
    return TruncatedSeries.monomial(1, order=order)
