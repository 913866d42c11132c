"""Extension numbers ``EX(label, s)``: descendants exactly ``s`` levels below.

Two implementations:

* :class:`ExtensionTable` is the plain memoized recursion over
  :func:`children`; it works for any label and is the reference.
* :class:`LevelTable` computes whole levels at once.  Level ``s`` holds EX
  for every label of size at most ``m - s`` (see :func:`labels.size`), which
  covers every node at depth ``m - 2 - s``.  Sums over the ``i`` ranges of
  the rules become prefix sums, so one level costs about one addition per
  entry.  Levels are kept either all in memory or, for large ``m``, as
  checkpoints every ``~sqrt(m)`` levels with the segment in use rebuilt on
  demand (each segment once when levels are read top-down).
"""

import math
from itertools import accumulate

from .labels import TreeLabel, children, root

STREAMING_THRESHOLD = 60
MAX_M = {"two": 300, "three": 300, "all": 80}


class ExtensionTable:
    """Memoized ``EX(label, s)`` straight from the rewriting rules."""

    def __init__(self):
        self.memo = {}

    def __call__(self, label, s):
        return self.ex(label, s)

    def ex(self, label, s):
        if s < 0:
            raise ValueError("s must be >= 0")
        if s == 0:
            return 1
        v = self.memo.get((label, s))
        return self._fill(label, s) if v is None else v

    def _fill(self, label, s):
        if s == 0:
            return 1
        total = 0
        for child, _ in children(label):
            key = (child, s - 1)
            v = self.memo.get(key)
            if v is None:
                v = self._fill(child, s - 1)
            total += v
        self.memo[(label, s)] = total
        return total

    def level_counts(self, variant, depth):
        r = root(variant)
        return [self.ex(r, s) for s in range(depth + 1)]


def _acc(row):
    return list(accumulate(row, initial=0))


def _get(rows, i, j):
    if 0 <= i < len(rows):
        r = rows[i]
        if 0 <= j < len(r):
            return r[j]
    return 0


# -- two-sided: Tn[k], Ty[k] for k <= h -----------------------------------------

class _Two:
    @staticmethod
    def base(h):
        return ([0] + [1] * h, [0] + [1] * h)

    @staticmethod
    def advance(prev, h):
        Tn0, Ty0 = prev
        P = _acc(Tn0)
        Tn = [0] * (h + 1)
        Ty = [0] * (h + 1)
        for k in range(1, h + 1):
            b = P[k] + Ty0[k]
            Tn[k] = b
            Ty[k] = b + Ty0[k + 1]
        return Tn, Ty

    @staticmethod
    def get(level, label):
        arr = level[0] if label.e == "n" else level[1]
        return arr[label.k] if label.k < len(arr) else 0


# -- three-sided: T[W][k] (W = k + l <= h - 1), L[k][l] (k + l <= h) -------------

class _Three:
    @staticmethod
    def base(h):
        T = [[0] + [1] * W for W in range(h)]
        L = [[0] * (h + 1)] + [[0] + [1] * (h - k) for k in range(1, h + 1)]
        return T, [r[:] for r in T], L, [r[:] for r in L]

    @staticmethod
    def advance(prev, h):
        Tn0, Ty0, Ln0, Ly0 = prev
        PT = [_acc(r) for r in Tn0]
        Tn, Ty = [], []
        for W in range(h):
            pt, ty0 = PT[W], Ty0[W]
            rn = [0] * (W + 1)
            ry = [0] * (W + 1)
            for k in range(1, W + 1):
                b = pt[k] + ty0[k]
                rn[k] = b
                ry[k] = b + (ty0[k + 1] if k < W else Ln0[k + 1][1])
            Tn.append(rn)
            Ty.append(ry)
        Ln, Ly = [[0] * (h + 1)], [[0] * (h + 1)]
        for k in range(1, h + 1):
            top = PT[k][k] + Ty0[k][k]
            pl, ly1, ly0 = _acc(Ln0[k + 1]), Ly0[k + 1], Ly0[k]
            n = h - k + 1
            rn = [0] * n
            ry = [0] * n
            for l in range(1, n):
                b = top + pl[l] + ly1[l]
                rn[l] = b
                ry[l] = b + ly0[l + 1]
            Ln.append(rn)
            Ly.append(ry)
        return Tn, Ty, Ln, Ly

    @staticmethod
    def get(level, label):
        a, e, k, l, _ = label
        if a == "T":
            return _get(level[0] if e == "n" else level[1], k + l, k)
        return _get(level[2] if e == "n" else level[3], k, l)


# -- unrestricted ----------------------------------------------------------------
#   T[p][W][k]  with W = k + l, W + p <= h
#   L[k][H][l]  with H = l + p, k + H <= h
#   B[k][p][l]  with k + p <= h, l <= k - 1

class _All:
    @staticmethod
    def base(h):
        T = [[[0] + [1] * W for W in range(h - p + 1)] for p in range(h + 1)]
        L = [[[0] + [1] * H for H in range(h - k + 1)] for k in range(h + 1)]
        B = [[[0] + [1] * (k - 1) for p in range(h - k + 1)] for k in range(h + 1)]
        L[0] = [[0] * (H + 1) for H in range(h + 1)]
        B[0] = [[0] for _ in range(h + 1)]
        cp = lambda X: [[r[:] for r in M] for M in X]
        return T, cp(T), L, cp(L), B, cp(B)

    @staticmethod
    def advance(prev, h):
        Tn0, Ty0, Ln0, Ly0, Bn0, By0 = prev
        PT = [[_acc(r) for r in M] for M in Tn0]
        PL = [[_acc(r) for r in M] for M in Ln0]

        def t_part(H, k):
            # step 1 children of an L or B node: rows i <= k on a box of height H
            return PT[H + 1][k][k] + Ty0[H + 1][k][k]

        Tn, Ty = [], []
        for p in range(h + 1):
            Mn, My = [], []
            for W in range(h - p + 1):
                pt, ty1 = PT[p + 1][W], Ty0[p + 1][W]
                ty0 = Ty0[p][W]
                rn = [0] * (W + 1)
                ry = [0] * (W + 1)
                for k in range(1, W + 1):
                    b = pt[k] + ty1[k]
                    rn[k] = b
                    if k < W:
                        ry[k] = b + ty0[k + 1]
                    elif p >= 1:
                        ry[k] = b + Ln0[k + 1][p][1]
                    else:
                        ry[k] = b
                Mn.append(rn)
                My.append(ry)
            Tn.append(Mn)
            Ty.append(My)

        Ln, Ly = [[[0] * (H + 1) for H in range(h + 1)]], [[[0] * (H + 1) for H in range(h + 1)]]
        for k in range(1, h + 1):
            Mn, My = [], []
            for H in range(h - k + 1):
                top = t_part(H, k)
                pl, ly1 = PL[k + 1][H], Ly0[k + 1][H]
                ly0 = Ly0[k][H]
                rn = [0] * (H + 1)
                ry = [0] * (H + 1)
                for l in range(1, H + 1):
                    b = top + pl[l] + ly1[l]
                    rn[l] = b
                    if l < H:
                        ry[l] = b + ly0[l + 1]
                    else:
                        ry[l] = b + _get(Bn0[k], l + 1, 1)
                Mn.append(rn)
                My.append(ry)
            Ln.append(Mn)
            Ly.append(My)

        Bn, By = [[[0] for _ in range(h + 1)]], [[[0] for _ in range(h + 1)]]
        for k in range(1, h + 1):
            Mn, My = [], []
            for p in range(h - k + 1):
                n = k
                rn = [0] * n
                ry = [0] * n
                if p >= 1:
                    top = t_part(p, k) + PL[k + 1][p][p] + Ly0[k + 1][p][p]
                    bn1, by1 = Bn0[k][p + 1], By0[k][p + 1]
                    pb = _acc(bn1)
                    bn0, by0 = Bn0[k][p], By0[k][p]
                    for l in range(1, n):
                        b = top + pb[l] + (by1[l] if k - 1 > l else bn1[l])
                        rn[l] = b
                        if l + 1 < n:
                            ry[l] = b + (by0[l + 1] if k - 1 > l + 1 else bn0[l + 1])
                        else:
                            ry[l] = b
                Mn.append(rn)
                My.append(ry)
            Bn.append(Mn)
            By.append(My)
        return Tn, Ty, Ln, Ly, Bn, By

    @staticmethod
    def get(level, label):
        a, e, k, l, p = label
        y = e == "y"
        if a == "T":
            M = level[1 if y else 0]
            return _get(M[p], k + l, k) if 0 <= p < len(M) else 0
        if a == "L":
            M = level[3 if y else 2]
            return _get(M[k], l + p, l) if 0 <= k < len(M) else 0
        M = level[5 if y else 4]
        return _get(M[k], p, l) if 0 <= k < len(M) else 0


_KERNELS = {"two": _Two, "three": _Three, "all": _All}


class LevelTable:
    """EX for every label that can occur on the way to half-perimeter ``m``.

    ``level(s)`` returns the opaque level ``s`` and ``ex(label, s)`` looks a
    value up.  ``streaming`` (default: ``m >= 60``) keeps only checkpoints.
    Labels larger than the level bound read as 0.
    """

    def __init__(self, variant, m, streaming=None, cap=None):
        if variant not in _KERNELS:
            raise ValueError(f"unknown tree class {variant!r}")
        cap = MAX_M[variant] if cap is None else cap
        if m > cap:
            raise ValueError(f"m = {m} exceeds the cap {cap} for {variant!r}")
        if m < 2:
            raise ValueError("m must be >= 2")
        self.variant = variant
        self.m = m
        self.kernel = _KERNELS[variant]
        self.streaming = m >= STREAMING_THRESHOLD if streaming is None else streaming
        self.top = m - 2                       # highest level needed
        self.stride = max(1, math.isqrt(self.top)) if self.streaming else 1
        self.checkpoints = {}
        self.segment = {}
        self.rebuilds = 0
        self._build()

    def _h(self, s):
        return self.m - s

    def _build(self):
        level = self.kernel.base(self._h(0))
        self._store(0, level)
        for s in range(1, self.top + 1):
            level = self.kernel.advance(level, self._h(s))
            self._store(s, level)

    def _store(self, s, level):
        if not self.streaming or s % self.stride == 0:
            self.checkpoints[s] = level

    def level(self, s):
        if not 0 <= s <= self.top:
            raise IndexError(f"level {s} outside 0..{self.top}")
        lv = self.checkpoints.get(s)
        if lv is not None:
            return lv
        lv = self.segment.get(s)
        if lv is not None:
            return lv
        a = s - s % self.stride
        lv = self.checkpoints[a]
        seg = {}
        for j in range(a + 1, min(a + self.stride, self.top + 1)):
            lv = self.kernel.advance(lv, self._h(j))
            seg[j] = lv
        self.segment = seg
        self.rebuilds += 1
        return seg[s]

    def ex(self, label, s):
        return self.kernel.get(self.level(s), label)

    def total(self):
        """``EX(root, m - 2)``: the number of tree nodes at depth ``m - 2``."""
        return self.ex(root(self.variant), self.top)

    def level_counts(self):
        r = root(self.variant)
        return [self.kernel.get(self.checkpoints[s], r) if s in self.checkpoints
                else self.ex(r, s) for s in range(self.top + 1)]
