"""Generating-tree labels and their rewriting rules.

A label ``(a, e, k, l, p)`` describes the growing polygon:

* ``a`` is the kind of the last step: ``T`` (top), ``L`` (left), ``B`` (bottom);
* ``e`` is ``"y"`` when the last row/column may be extended by one cell;
* ``k`` is the length of the top row;
* ``l`` is, for ``T``, the gap between the top row and the left side of the
  box; for ``L`` the length of the leftmost column; for ``B`` the length of
  the bottom row;
* ``p`` is the box height for ``T`` and ``B``, and for ``L`` the gap between
  the leftmost column and the bottom of the box.

Three-sided labels drop ``p``, two-sided labels drop ``l`` and ``p``.

Step types: 1 new top row of length ``i``; 2 one cell left of the top row;
3 new leftmost column of length ``i``; 4 one cell below the leftmost column;
5 new bottom row of length ``i``; 6 one cell right of the bottom row.
"""

from typing import NamedTuple, Optional

VARIANTS = ("two", "three", "all")


class TreeLabel(NamedTuple):
    a: str
    e: str
    k: int
    l: Optional[int] = None
    p: Optional[int] = None

    @property
    def variant(self):
        if self.l is None:
            return "two"
        return "three" if self.p is None else "all"

    def __str__(self):
        return "(" + ",".join(str(v) for v in self if v is not None) + ")"


class Step(NamedTuple):
    type: int
    i: int = 1


ROOTS = {
    "two": TreeLabel("T", "y", 1),
    "three": TreeLabel("L", "n", 1, 1),
    "all": TreeLabel("L", "n", 1, 1, 0),
}


def root(variant):
    try:
        return ROOTS[variant]
    except KeyError:
        raise ValueError(f"unknown tree class {variant!r}; expected one of {VARIANTS}") from None


def size(label):
    """A bound that grows by at most one per step: at depth ``d`` it is ``<= d + 2``.

    Width plus height of the box, with the three-sided ``T`` labels counted
    one higher since they forget the height.
    """
    a, e, k, l, p = label
    if l is None:
        return k
    if p is None:
        return k + l + (1 if a == "T" else 0)
    return k + p if a == "B" else k + l + p


def is_valid(label):
    a, e, k, l, p = label
    if e not in ("y", "n") or k < 1:
        return False
    v = label.variant
    if v == "two":
        return a == "T"
    if a == "T":
        return l >= 0 and (v == "three" or p >= 1)
    if a == "L":
        # an extendable column always has a column to its right
        return l >= 1 and (e == "n" or k >= 2) and (v == "three" or p >= 0)
    # an extendable bottom row stays two cells short of the width
    return (v == "all" and a == "B" and 1 <= l <= k - (2 if e == "y" else 1)
            and p >= 2)


def _children_two(k, e):
    out = [(TreeLabel("T", "n", i), Step(1, i)) for i in range(1, k)]
    out.append((TreeLabel("T", "y", k), Step(1, k)))
    if e == "y":
        out.append((TreeLabel("T", "y", k + 1), Step(2)))
    return out


def _children_three(a, e, k, l):
    if a == "T":
        W = k + l
        out = [(TreeLabel("T", "n", i, W - i), Step(1, i)) for i in range(1, k)]
        out.append((TreeLabel("T", "y", k, l), Step(1, k)))
        if e == "y":
            out.append((TreeLabel("T", "y", k + 1, l - 1) if l >= 1
                        else TreeLabel("L", "n", k + 1, 1), Step(2)))
        return out
    out = [(TreeLabel("T", "n", i, k - i), Step(1, i)) for i in range(1, k)]
    out.append((TreeLabel("T", "y", k, 0), Step(1, k)))
    out += [(TreeLabel("L", "n", k + 1, i), Step(3, i)) for i in range(1, l)]
    out.append((TreeLabel("L", "y", k + 1, l), Step(3, l)))
    if e == "y":
        out.append((TreeLabel("L", "y", k, l + 1), Step(4)))
    return out


def _children_all(a, e, k, l, p):
    L = TreeLabel
    if a == "T":
        out = [(L("T", "n", i, l + k - i, p + 1), Step(1, i)) for i in range(1, k)]
        out.append((L("T", "y", k, l, p + 1), Step(1, k)))
        if e == "y":
            out.append((L("T", "y", k + 1, l - 1, p) if l >= 1
                        else L("L", "n", k + 1, 1, p - 1), Step(2)))
        return out
    h = l + p if a == "L" else p         # box height
    out = [(L("T", "n", i, k - i, h + 1), Step(1, i)) for i in range(1, k)]
    out.append((L("T", "y", k, 0, h + 1), Step(1, k)))
    if a == "L":
        out += [(L("L", "n", k + 1, i, h - i), Step(3, i)) for i in range(1, l)]
        out.append((L("L", "y", k + 1, l, p), Step(3, l)))
        if e == "y":
            out.append((L("L", "y", k, l + 1, p - 1) if p >= 1
                        else L("B", "n", k, 1, l + 1), Step(4)))
        return out
    # a == "B": a new leftmost column may span the whole height
    out += [(L("L", "n", k + 1, i, h - i), Step(3, i)) for i in range(1, h)]
    out.append((L("L", "y", k + 1, h, 0), Step(3, h)))
    out += [(L("B", "n", k, i, p + 1), Step(5, i)) for i in range(1, l)]
    out.append((L("B", "y" if k - 1 > l else "n", k, l, p + 1), Step(5, l)))
    if e == "y":
        out.append((L("B", "y" if k - 1 > l + 1 else "n", k, l + 1, p), Step(6)))
    return out


def children(label):
    """Child labels with the step producing each, in a fixed order."""
    a, e, k, l, p = label
    v = label.variant
    if v == "two":
        return _children_two(k, e)
    if v == "three":
        return _children_three(a, e, k, l)
    return _children_all(a, e, k, l, p)
