"""Uniform sampling by weighted descent of the generating tree.

At a node with label ``pi`` and ``s`` levels to go, a child ``alpha`` is
taken with probability ``EX(alpha, s-1) / EX(pi, s)``: draw ``r`` uniformly
in ``[0, EX(pi, s))`` and walk the cumulative child weights.

Randomness: CPython's ``random.Random`` (Mersenne Twister MT19937).  Big
integers are drawn with ``randrange``, which takes ``n.bit_length()`` random
bits and rejects values ``>= n`` (fewer than two tries on average).  Sample
``i`` of a run with master seed ``S`` gets its own generator seeded by
:func:`derive_seed`, so the output depends only on ``(S, i)`` and not on how
the samples are spread over worker processes.
"""

import hashlib
import logging
import random
import sys
from collections import Counter
from dataclasses import dataclass

from .. import oracle
from .geometry import GrowingPolygon, IllegalStepError, perimeter
from .labels import children, root
from .tables import LevelTable

log = logging.getLogger(__name__)

RNG_NAME = "MT19937"
SEED_SPLIT = "blake2b-64(master:index)"
GENERATOR = (f"prudent generating tree; CPython {sys.version_info[0]}.{sys.version_info[1]} "
             f"random.Random ({RNG_NAME}); seeds split by {SEED_SPLIT}")
CLASS_TO_ORACLE = {"two": "two", "three": "three", "all": "all"}
MAX_UNIFORMITY_BINS = 10 ** 4


def derive_seed(master, index):
    """64-bit seed of sample ``index`` under ``master``."""
    h = hashlib.blake2b(f"{master}:{index}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


@dataclass
class Sample:
    cls: str
    index: int
    seed: int
    polygon: GrowingPolygon

    @property
    def half_perimeter(self):
        return self.polygon.half_perimeter


def _draw(states, table, s):
    """Advance every ``(poly, rng)`` in ``states`` by one level; ``s`` levels remain."""
    below = table.level(s - 1)
    here = table.level(s)
    get = table.kernel.get
    for poly, rng in states:
        kids = children(poly.label)
        weights = [get(below, c) for c, _ in kids]
        total = sum(weights)
        if total != get(here, poly.label):
            raise RuntimeError(f"children of {poly.label} at s={s} do not sum to EX")
        r = rng.randrange(total)
        for (child, step), w in zip(kids, weights):
            if r < w:
                poly.grow(step, child)
                break
            r -= w


def _descend(cls, m, rngs, table):
    states = [(GrowingPolygon(cls), rng) for rng in rngs]
    for s in range(m - 2, 0, -1):
        _draw(states, table, s)
    return [p for p, _ in states]


def build_table(cls, m, streaming=None):
    return LevelTable(cls, m, streaming=streaming)


def sample(cls, m, rng, table=None):
    """One uniformly random polygon of half-perimeter ``m`` in the tree class."""
    if table is None or table.m < m or table.variant != cls:
        table = build_table(cls, m)
    _check_m(table, m)
    return _descend(cls, m, [rng], table)[0]


def _check_m(table, m):
    # the table's level s is built for half-perimeter table.m; a smaller m reuses it
    if m < 2:
        raise ValueError("m must be >= 2")
    if m > table.m:
        raise ValueError(f"table built for m <= {table.m}, asked for {m}")


def sample_stream(cls, m, n, rng, table=None):
    """``n`` polygons drawn from one generator ``rng`` (no per-sample seeds)."""
    if table is None:
        table = build_table(cls, m)
    _check_m(table, m)
    out = []
    batch = 4096
    for start in range(0, n, batch):
        out += _descend(cls, m, [rng] * min(batch, n - start), table)
    return out


_WORKER_TABLE = None


def _worker(args):
    cls, m, seed, indices = args
    rngs = [random.Random(derive_seed(seed, i)) for i in indices]
    polys = _descend(cls, m, rngs, _WORKER_TABLE)
    return [(i, derive_seed(seed, i), p.steps) for i, p in zip(indices, polys)]


def sample_many(cls, m, count, seed, table=None, jobs=1):
    """``count`` samples; sample ``i`` uses the generator seeded by ``derive_seed(seed, i)``."""
    global _WORKER_TABLE
    if table is None:
        table = build_table(cls, m)
    _check_m(table, m)
    if jobs <= 1 or count <= 1:
        rngs = [random.Random(derive_seed(seed, i)) for i in range(count)]
        polys = _descend(cls, m, rngs, table)
        return [Sample(cls, i, derive_seed(seed, i), p) for i, p in enumerate(polys)]
    import multiprocessing
    from .geometry import replay
    _WORKER_TABLE = table
    parts = [(cls, m, seed, list(range(j, count, jobs))) for j in range(jobs)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        results = pool.map(_worker, parts)
    _WORKER_TABLE = None
    flat = sorted(r for part in results for r in part)
    return [Sample(cls, i, s, replay(steps, cls)) for i, s, steps in flat]


def exhaustive(cls, m):
    """Every tree node at depth ``m - 2``, as polygons (small ``m`` only)."""
    out = []

    def rec(poly, depth):
        if depth == m - 2:
            out.append(poly)
            return
        for child, step in children(poly.label):
            rec(poly.copy().grow(step, child), depth + 1)

    rec(GrowingPolygon(cls), 0)
    return out


class ValidationError(AssertionError):
    pass


def validate_polygon(poly, cls, m=None):
    """Check a sampled polygon with the brute-force oracle; raises on failure.

    The boundary walk from the origin round to (1, 0) (clockwise) must be a
    prudent polygon of the requested class and half-perimeter.
    """
    try:
        walk = oracle.extract_boundary_walk(poly.cells, (1, 0), "cw")
        info = oracle.classify(walk)
    except (oracle.BoundaryError, oracle.NotPrudentError, ValueError) as exc:
        raise ValidationError(f"not a prudent polygon: {exc}") from exc
    if CLASS_TO_ORACLE[cls] not in info.classes:
        raise ValidationError(f"polygon is not in class {cls!r}: {sorted(info.classes)}")
    if cls == "all" and "classF" not in info.classes:
        raise ValidationError("unrestricted sample is not in class F")
    if len(walk) != 2 * poly.half_perimeter or perimeter(poly.cells) != len(walk):
        raise ValidationError(f"boundary of length {len(walk)} but half-perimeter "
                              f"{poly.half_perimeter}")
    if m is not None and poly.half_perimeter != m:
        raise ValidationError(f"half-perimeter {poly.half_perimeter}, expected {m}")
    if poly.geometric_label() != poly.label:
        raise ValidationError(f"label {poly.label} but geometry says {poly.geometric_label()}")
    return info


def canonical_hash(cells):
    """Stable 64-bit hash of a cell set (sorted cells, blake2b)."""
    text = ";".join(f"{x},{y}" for x, y in sorted(cells))
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


@dataclass
class UniformityResult:
    statistic: float
    pvalue: float
    bins: int
    samples: int
    occupied: int


def uniformity_test(cls, m, nsamples, seed):
    """Chi-square test of sampled frequencies against the uniform distribution."""
    from scipy.stats import chi2

    table = build_table(cls, m)
    nbins = table.total()
    if nbins > MAX_UNIFORMITY_BINS:
        raise ValueError(f"{nbins} polygons in class {cls!r} at m={m}: too many bins "
                         f"(limit {MAX_UNIFORMITY_BINS})")
    rng = random.Random(seed)
    counts = Counter(canonical_hash(p.cells) for p in sample_stream(cls, m, nsamples, rng, table))
    if len(counts) > nbins:
        raise RuntimeError("more distinct polygons than the tree has leaves")
    expected = nsamples / nbins
    stat = sum((c - expected) ** 2 for c in counts.values()) / expected
    stat += (nbins - len(counts)) * expected
    df = nbins - 1
    p = 1.0 if df == 0 else float(chi2.sf(stat, df))
    return UniformityResult(stat, p, nbins, nsamples, len(counts))


def level_counts(cls, depth):
    """Tree level sizes ``EX(root, s)`` for ``s = 0..depth``."""
    table = LevelTable(cls, depth + 2, streaming=False, cap=max(depth + 2, 2))
    return table.level_counts()


__all__ = ["GENERATOR", "Sample", "derive_seed", "sample", "sample_many", "sample_stream",
           "exhaustive", "validate_polygon", "canonical_hash", "uniformity_test",
           "level_counts", "ValidationError", "IllegalStepError", "root"]
