"""Series solutions of the functional equations by t-adic fixed-point iteration.

These solutions do not use the kernel method, so they are an independent
route to the bar-graph and three-sided series, and the only route to the
class F of unrestricted prudent polygons (ending in (1, 0), clockwise).

Every right-hand side carries a positive power of ``t`` in front of the
unknowns, except for the couplings ``G -> F`` and ``H -> G`` at the same
order; updating in the order H, G, F (Gauss-Seidel) resolves those within a
pass.  Pass ``p`` evaluates the right-hand sides modulo ``t^(p+1)``, so after
pass ``p`` every unknown is exact to that order.
"""

import logging

from .closed_forms import bargraph_gf
from .exact_series import TruncatedSeries

log = logging.getLogger(__name__)

DEFAULT_ORDER_4SD = 24


class ConvergenceError(RuntimeError):
    pass


class DivisibilityError(ArithmeticError):
    """``G(x, xt, w)`` had a term without ``w``; the ``w^-1`` cannot be exact."""


def times(s, n=0, u=0, w=0, x=0, coeff=1):
    """Multiply by the monomial ``coeff * t^n u^u w^w x^x``."""
    return s.map_monomials(lambda k, m: (k + n, (m[0] + u, m[1] + w, m[2] + x), coeff))


def _geometric_wt(N):
    """``1 / (1 - w t)``."""
    return TruncatedSeries.from_terms({(k, 0, k, 0): 1 for k in range(N + 1)}, N)


class FixedPointProblem:
    """Iterate ``X_i <- rhs_i(X)`` for a list of unknowns, in list order.

    ``updates`` is a list of ``(name, fn)``; ``fn(state, order)`` returns the
    right-hand side for ``name`` as a series of the given order, reading
    the other unknowns from ``state`` (already truncated to that order).
    """

    def __init__(self, updates, order, max_passes=None):
        self.updates = updates
        self.order = order
        self.max_passes = order + 2 if max_passes is None else max_passes
        self.passes = 0

    def solve(self):
        N = self.order
        state = {name: TruncatedSeries.zero(N) for name, _ in self.updates}
        for p in range(self.max_passes):
            prec = min(p, N)
            work = {k: v.truncate(prec) for k, v in state.items()}
            changed = False
            for name, fn in self.updates:
                new = fn(work, prec)
                old = work[name]
                # everything below t^prec was already settled by earlier passes
                for n in range(prec):
                    if new.coeffs[n] != old.coeffs[n]:
                        raise ConvergenceError(
                            f"{name}: coefficient of t^{n} changed in pass {p}")
                if new != old:
                    changed = True
                work[name] = new
            state = {k: TruncatedSeries(v.coeffs, N) for k, v in work.items()}
            self.passes = p + 1
            if prec == N and not changed:
                return state
        raise ConvergenceError(f"no fixed point after {self.max_passes} passes")


# -- bar graphs ---------------------------------------------------------------

def feqB_rhs(B, N):
    """Right-hand side of the bar-graph equation in ``(t, u, w)``."""
    geo = _geometric_wt(N)
    single = times(geo, 2, u=1, w=1)                                 # u t^2 w / (1 - w t)
    shorter = times(B.divided_difference("w", None), 1, u=1, w=1)    # u w t (B(1) - B(w)) / (1 - w)
    taller = times(B * geo, 2, u=1, w=1)                             # u B t^2 w / (1 - w t)
    return single + shorter + taller


def solve_feqB(N):
    """Bar graphs by half-perimeter, width ``u`` and last column height ``w``."""
    prob = FixedPointProblem([("B", lambda s, p: feqB_rhs(s["B"], p))], N)
    return prob.solve()["B"]


# -- generic three-sided ------------------------------------------------------

def feqR_rhs(R, Bu, N):
    """Right-hand side of the three-sided equation; ``Bu`` is ``B(t, u)``."""
    t = TruncatedSeries.monomial(1, order=N)
    base = times(Bu.truncate(N) + t, 1, u=1)                          # u t (B(t,u) + t)
    R_uut = R.subst("w", mono=(1, 0, 0), tshift=1)                     # R(t, u, u t)
    shorter = times(R.divided_difference("u", "w"), 1, u=1)           # ut (R(w,w) - R(u,w)) / (w - u)
    longer = times(R.divided_difference("w", "u", 1), 2, u=1)         # u t^2 (R(u,w) - R(u,ut)) / (w - ut)
    return base + shorter + longer + R_uut * base


def solve_feqR(N, Bu=None):
    """Generic three-sided polygons ending in (1, 0): ``R(t, u, w)``."""
    if Bu is None:
        Bu = bargraph_gf(N)
    prob = FixedPointProblem([("R", lambda s, p: feqR_rhs(s["R"], Bu.truncate(p), p))], N)
    return prob.solve()["R"]


# -- unrestricted (classes F, G, H) ---------------------------------------------

def _kernel_part(X):
    """``t u x (X(w,w,x) - X(u,w,x))/(w-u) + t^2 u x (X(u,w,x) - X(u,ut,x))/(w-ut)``."""
    return (times(X.divided_difference("u", "w"), 1, u=1, x=1)
            + times(X.divided_difference("w", "u", 1), 2, u=1, x=1))


def I_F(G):
    return G.rename(u="x", w="x", x="u")


def I_G(F, H):
    N = F.order
    unit = TruncatedSeries.monomial(2, u=1, x=1, order=N)
    return unit + times(F.rename(u="x", w="x", x="w", tshift={"w": 1}), 2, u=1, x=1) \
        + times(H.rename(u="x", w="x", x="u"), x=1)


def I_H(G):
    shifted = G.rename(u="x", w="x", x="w", tshift={"w": 1})
    try:
        reduced = shifted.divide_by_var("w")
    except ArithmeticError as exc:
        bad = [(n, m, c) for n, m, c in shifted.terms() if m[1] == 0][:10]
        raise DivisibilityError(
            f"G(x, xt, w) has terms free of w, first few: {bad}") from exc
    return times(reduced, 2, u=1, x=1)


def solve_feq4sd(N=DEFAULT_ORDER_4SD):
    """Joint solution ``(F, G, H)`` in ``(t, u, w, x)`` to order ``N``.

    Memory and time grow roughly like ``N^4`` monomials per unknown; the
    default order 24 takes a few seconds.
    """
    updates = [
        ("H", lambda s, p: _kernel_part(s["H"]) + I_H(s["G"])),
        ("G", lambda s, p: _kernel_part(s["G"]) + I_G(s["F"], s["H"])),
        ("F", lambda s, p: _kernel_part(s["F"]) + I_F(s["G"])),
    ]
    sol = FixedPointProblem(updates, N).solve()
    return sol["F"], sol["G"], sol["H"]


def class_F_counts(N=DEFAULT_ORDER_4SD):
    """``[t^m] F(t, 1, 1, 1)`` for ``m = 0 .. N``."""
    F, _, _ = solve_feq4sd(N)
    return F.evaluate(u=1, w=1, x=1).scalars()


def pp_all_gf(N=DEFAULT_ORDER_4SD):
    """All prudent polygons: eight symmetric copies of class F."""
    F, _, _ = solve_feq4sd(N)
    return F.evaluate(u=1, w=1, x=1).scale(8)
