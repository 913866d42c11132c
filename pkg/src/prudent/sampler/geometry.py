"""Polygons grown cell by cell along a path in the generating tree.

Cells are unit squares named by their lower-left corner.  The root is the
cell ``(0, 0)``, the root edge is its bottom side, and the box always has its
right side on ``x = 1``.  Conventions:

* top rows are flush right (they end in column ``x = 0``);
* leftmost columns hang from the top of the box;
* bottom rows are flush left.
"""

from .labels import TreeLabel, children, root


class IllegalStepError(RuntimeError):
    """A step that the current label does not allow; rules and geometry disagree."""


class GrowingPolygon:
    __slots__ = ("cells", "xmin", "ymin", "ymax", "top_len", "left_top", "left_bottom",
                 "bottom_len", "label", "steps", "half_perimeter")

    def __init__(self, variant="all"):
        self.cells = {(0, 0)}
        self.xmin = self.ymin = self.ymax = 0
        self.top_len = 1
        self.left_top = self.left_bottom = 0
        self.bottom_len = 1
        self.label = root(variant)
        self.steps = []
        self.half_perimeter = 2

    @property
    def variant(self):
        return self.label.variant

    @property
    def box(self):
        """``(xmin, xmax, ymin, ymax)`` in cell coordinates."""
        return self.xmin, 0, self.ymin, self.ymax

    def copy(self):
        new = GrowingPolygon.__new__(GrowingPolygon)
        for f in GrowingPolygon.__slots__:
            setattr(new, f, getattr(self, f))
        new.cells = set(self.cells)
        new.steps = list(self.steps)
        return new

    def _add(self, x, y):
        if (x, y) in self.cells:
            raise IllegalStepError(f"cell {(x, y)} already present")
        self.cells.add((x, y))

    def grow(self, step, label):
        """Apply ``step`` in place and set the new label (no legality check)."""
        kind, i = step
        if kind == 1:
            y = self.ymax + 1
            for x in range(1 - i, 1):
                self._add(x, y)
            self.ymax = y
            self.top_len = i
        elif kind == 2:
            x = -self.top_len
            self._add(x, self.ymax)
            self.top_len += 1
            if x < self.xmin:
                self.xmin = x
                self.left_top = self.left_bottom = self.ymax
        elif kind == 3:
            x = self.xmin - 1
            for y in range(self.ymax - i + 1, self.ymax + 1):
                self._add(x, y)
            self.xmin = x
            self.left_top, self.left_bottom = self.ymax, self.ymax - i + 1
            self.top_len += 1
        elif kind == 4:
            y = self.left_bottom - 1
            self._add(self.xmin, y)
            self.left_bottom = y
            if y < self.ymin:
                self.ymin = y
                self.bottom_len = 1
        elif kind == 5:
            y = self.ymin - 1
            for x in range(self.xmin, self.xmin + i):
                self._add(x, y)
            self.ymin = y
            self.bottom_len = i
        elif kind == 6:
            self._add(self.xmin + self.bottom_len, self.ymin)
            self.bottom_len += 1
        else:
            raise IllegalStepError(f"unknown step type {kind}")
        self.label = label
        self.steps.append(step)
        self.half_perimeter += 1
        return self

    def geometric_label(self):
        """The label fields read off the cells; compare with :attr:`label`."""
        return label_from_cells(self.cells, self.label.a, self.variant)


def apply_step(poly, step):
    """A new polygon: ``poly`` grown by ``step`` (which must be legal for its label)."""
    for child, st in children(poly.label):
        if st == step:
            return poly.copy().grow(step, child)
    raise IllegalStepError(f"step {step} is not allowed from label {poly.label}")


def replay(steps, variant):
    """Rebuild a polygon from the unit square by its list of steps."""
    poly = GrowingPolygon(variant)
    for step in steps:
        for child, st in children(poly.label):
            if st == tuple(step):
                poly.grow(st, child)
                break
        else:
            raise IllegalStepError(f"step {tuple(step)} is not allowed from label {poly.label}")
    return poly


def perimeter(cells):
    cells = set(cells)
    edges = 0
    for x, y in cells:
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb not in cells:
                edges += 1
    return edges


def _run(cells, fixed, lo, hi, axis):
    """Length of the run of cells starting at ``lo`` and moving towards ``hi``."""
    step = 1 if hi >= lo else -1
    n = 0
    v = lo
    while v != hi + step:
        c = (v, fixed) if axis == "row" else (fixed, v)
        if c not in cells:
            break
        n += 1
        v += step
    return n


def label_from_cells(cells, a, variant="all"):
    """Label ``(a, e, k, l, p)`` of a grown polygon, computed from its cells.

    ``a`` (the kind of the last step) is not visible in the cells and must be
    supplied.  ``e`` follows the extension rule: the last row or column is at
    least as long as its neighbour (for ``B`` also at least two cells short of
    the width).
    """
    cells = set(cells)
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    xmin, ymin, ymax = min(xs), min(ys), max(ys)
    width, height = 1 - xmin, ymax - ymin + 1
    row = lambda y: sum(1 for c in cells if c[1] == y)
    col = lambda x: sum(1 for c in cells if c[0] == x)
    k = _run(cells, ymax, 0, xmin, "row")
    if variant == "two":
        e = "y" if k >= row(ymax - 1) else "n"
        return TreeLabel("T", e, k)
    if a == "T":
        l = width - k
        e = "y" if ymax == ymin or k >= row(ymax - 1) else "n"
        return TreeLabel("T", e, k, l, None if variant == "three" else height)
    if a == "L":
        l = _run(cells, xmin, ymax, ymin, "col")
        e = "y" if xmin < 0 and l >= col(xmin + 1) else "n"
        p = height - l
        return TreeLabel("L", e, k, l, None if variant == "three" else p)
    l = _run(cells, ymin, xmin, 0, "row")
    e = "y" if l >= row(ymin + 1) and l <= k - 2 else "n"
    return TreeLabel("B", e, k, l, height)
