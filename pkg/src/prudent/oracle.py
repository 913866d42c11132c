"""Brute-force enumeration of prudent polygons straight from the definitions.

A prudent walk never steps towards a vertex it already occupies: the ray
from the current vertex in the step direction must be free.  A prudent
polygon of half-perimeter ``m`` is a prudent walk of ``2m - 1`` steps from the
origin whose last vertex is a neighbour of the origin.

Sidedness is checked step by step against the box (bounding rectangle) of
the walk *after* the step:

* one-sided: every step ends on the top side;
* two-sided: every step ends on the top or right side;
* three-sided: every step ends on the left, top or right side, and a
  horizontal step ending on the bottom side must enlarge the box.

Orientation: ``"cw"`` when the closed boundary has negative signed area
(x to the right, y up).
"""

from dataclasses import dataclass, field

CLASSES = ("one", "two", "three", "all", "classF")
DEFAULT_CAPS = {"one": 14, "two": 14, "three": 14, "all": 10, "classF": 10}
ENDPOINTS = ((1, 0), (0, 1), (-1, 0), (0, -1))
DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class NotPrudentError(ValueError):
    pass


class BoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class PolygonRecord:
    walk: tuple
    cells: frozenset
    half_perimeter: int
    endpoint: tuple
    orientation: str
    classes: frozenset = field(default_factory=frozenset)


@dataclass
class EnumerationResult:
    count: int
    records: list = None


def _sides_ok(x, y, box, horizontal, inflated, cls):
    xmin, xmax, ymin, ymax = box
    if cls == "one":
        return y == ymax
    if cls == "two":
        return y == ymax or x == xmax
    if cls == "three":
        if not (x == xmin or y == ymax or x == xmax):
            return False
        return not (horizontal and y == ymin and not inflated)
    return True


def _ray_free(x, y, dx, dy, occupied_rows, occupied_cols):
    if dy == 0:
        xs = occupied_rows.get(y, ())
        return not any((a - x) * dx > 0 for a in xs)
    ys = occupied_cols.get(x, ())
    return not any((b - y) * dy > 0 for b in ys)


def signed_area(walk):
    """Shoelace area of the closed polygon through ``walk``."""
    s = 0
    n = len(walk)
    for i in range(n):
        x0, y0 = walk[i]
        x1, y1 = walk[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s / 2


def cells_of(walk):
    """Unit cells (by lower-left corner) enclosed by the closed walk."""
    spans = {}
    n = len(walk)
    for i in range(n):
        (x0, y0), (x1, y1) = walk[i], walk[(i + 1) % n]
        if x0 == x1:
            spans.setdefault(min(y0, y1), []).append(x0)
    cells = set()
    for y, xs in spans.items():
        xs.sort()
        for a, b in zip(xs[::2], xs[1::2]):
            cells.update((x, y) for x in range(a, b))
    return frozenset(cells)


def _classify_steps(walk):
    """Class memberships of an open walk from the origin; raises if not prudent."""
    ok = {"one": True, "two": True, "three": True}
    rows, cols = {}, {}
    seen = set()
    x, y = walk[0]
    seen.add((x, y))
    rows.setdefault(y, []).append(x)
    cols.setdefault(x, []).append(y)
    box = [x, x, y, y]
    for nx, ny in walk[1:]:
        dx, dy = nx - x, ny - y
        if abs(dx) + abs(dy) != 1:
            raise NotPrudentError(f"non-unit step {(x, y)} -> {(nx, ny)}")
        if (nx, ny) in seen:
            raise NotPrudentError(f"walk revisits {(nx, ny)}")
        if not _ray_free(x, y, dx, dy, rows, cols):
            raise NotPrudentError(f"step {(x, y)} -> {(nx, ny)} points at an occupied vertex")
        inflated = nx < box[0] or nx > box[1] or ny < box[2] or ny > box[3]
        box = [min(box[0], nx), max(box[1], nx), min(box[2], ny), max(box[3], ny)]
        for cls in ok:
            if ok[cls] and not _sides_ok(nx, ny, box, dy == 0, inflated, cls):
                ok[cls] = False
        seen.add((nx, ny))
        rows.setdefault(ny, []).append(nx)
        cols.setdefault(nx, []).append(ny)
        x, y = nx, ny
    return ok


@dataclass(frozen=True)
class Classification:
    classes: frozenset
    endpoint: tuple
    orientation: str


def classify(walk):
    """Maximal set of classes a closed prudent boundary walk belongs to."""
    walk = [tuple(v) for v in walk]
    if walk[0] != (0, 0):
        raise ValueError("walk must start at the origin")
    if len(walk) < 4:
        raise ValueError("a polygon needs at least three steps")
    end = walk[-1]
    if end not in ENDPOINTS:
        raise ValueError(f"walk ends at {end}, not next to the origin")
    ok = _classify_steps(walk)
    classes = {"all"} | {c for c, v in ok.items() if v}
    orientation = "cw" if signed_area(walk) < 0 else "ccw"
    if end == (1, 0) and orientation == "cw":
        classes.add("classF")
    return Classification(frozenset(classes), end, orientation)


def _endpoint_feasible(box, ex, ey):
    xmin, xmax, ymin, ymax = box
    return xmax <= ex or xmin >= ex or ymax <= ey or ymin >= ey


def enumerate_polygons(m, cls="all", keep=False, cap=None):
    """Count (and optionally list) prudent polygons of half-perimeter ``m``.

    ``cls`` is one of ``one``, ``two``, ``three``, ``all``, ``classF``.
    ``one`` counts rooted walks; see :func:`one_sided_shapes` for shapes.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    cap = DEFAULT_CAPS[cls] if cap is None else cap
    if m > cap:
        raise ValueError(f"half-perimeter {m} exceeds the enumeration cap {cap} for {cls!r}")
    if m < 2:
        return EnumerationResult(0, [] if keep else None)
    steps = 2 * m - 1
    side_cls = cls if cls in ("one", "two", "three") else None
    records = [] if keep else None
    count = 0

    walk = [(0, 0)]
    seen = {(0, 0)}
    rows = {0: [0]}
    cols = {0: [0]}

    def dfs(x, y, box, left):
        nonlocal count
        for dx, dy in DIRS:
            nx, ny = x + dx, y + dy
            if (nx, ny) in seen:
                continue
            if not _ray_free(x, y, dx, dy, rows, cols):
                continue
            inflated = nx < box[0] or nx > box[1] or ny < box[2] or ny > box[3]
            nbox = (min(box[0], nx), max(box[1], nx), min(box[2], ny), max(box[3], ny))
            if side_cls and not _sides_ok(nx, ny, nbox, dy == 0, inflated, side_cls):
                continue
            rem = left - 1
            if rem == 0:
                if abs(nx) + abs(ny) != 1:
                    continue
                if cls == "classF" and not ((nx, ny) == (1, 0) and (x, y) == (1, 1)):
                    continue
                count += 1
                if keep:
                    w = tuple(walk) + ((nx, ny),)
                    records.append(_record(w, m))
                continue
            # some neighbour of the origin must stay reachable and on the box boundary
            feasible = False
            for ex, ey in ENDPOINTS:
                if (ex, ey) in seen or (ex, ey) == (nx, ny):
                    continue
                if abs(ex - nx) + abs(ey - ny) <= rem and _endpoint_feasible(nbox, ex, ey):
                    feasible = True
                    break
            if not feasible:
                continue
            if cls == "classF" and (nx > 1 or (1, 0) in seen):
                continue
            walk.append((nx, ny))
            seen.add((nx, ny))
            rows.setdefault(ny, []).append(nx)
            cols.setdefault(nx, []).append(ny)
            dfs(nx, ny, nbox, rem)
            cols[nx].pop()
            rows[ny].pop()
            seen.discard((nx, ny))
            walk.pop()

    dfs(0, 0, (0, 0, 0, 0), steps)
    return EnumerationResult(count, records)


def _record(walk, m):
    c = classify(walk)
    return PolygonRecord(walk=walk, cells=cells_of(walk), half_perimeter=m,
                         endpoint=c.endpoint, orientation=c.orientation,
                         classes=c.classes)


def count(m, cls="all"):
    return enumerate_polygons(m, cls).count


def one_sided_shapes(m):
    """One polygon per shape: a single row of ``m - 1`` cells."""
    return 1 if m >= 2 else 0


def extract_boundary_walk(cells, endpoint=(1, 0), orientation="cw"):
    """Boundary of a cell set as a walk from the origin to ``endpoint``.

    The edge between ``endpoint`` and the origin is the root edge; the walk
    traverses the rest of the boundary cycle.  Raises :class:`BoundaryError`
    if the boundary is not a single simple cycle through that edge, or if the
    resulting orientation is not ``orientation``.
    """
    cells = set(map(tuple, cells))
    if not cells:
        raise BoundaryError("empty cell set")
    edges = set()
    for x, y in cells:
        for e in (((x, y), (x + 1, y)), ((x, y + 1), (x + 1, y + 1)),
                  ((x, y), (x, y + 1)), ((x + 1, y), (x + 1, y + 1))):
            if e in edges:
                edges.remove(e)
            else:
                edges.add(e)
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(v) != 2 for v in adj.values()):
        raise BoundaryError("boundary touches itself (cells meet at a corner)")
    origin = (0, 0)
    endpoint = tuple(endpoint)
    if origin not in adj or endpoint not in adj[origin]:
        raise BoundaryError(f"edge {origin}-{endpoint} is not on the boundary")
    walk = [origin]
    prev, cur = endpoint, origin
    while True:
        a, b = adj[cur]
        nxt = a if b == prev else b
        if nxt == endpoint:
            walk.append(endpoint)
            break
        if nxt == origin:
            raise BoundaryError("boundary cycle closed without reaching the endpoint")
        walk.append(nxt)
        prev, cur = cur, nxt
    if len(walk) != len(edges):
        raise BoundaryError("boundary has several cycles (cell set has holes or parts)")
    got = "cw" if signed_area(walk) < 0 else "ccw"
    if got != orientation:
        raise BoundaryError(f"boundary to {endpoint} runs {got}, not {orientation}")
    return walk
