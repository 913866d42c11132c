import random
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings, strategies as st

from prudent import closed_forms as cf
from prudent import oracle
from prudent.sampler import (ExtensionTable, GrowingPolygon, IllegalStepError, LevelTable,
                             Step, TreeLabel, apply_step, children, derive_seed, ex_count,
                             exhaustive, is_valid, label_from_cells, level_counts, render,
                             replay, root, sample, sample_many, size, to_ascii, to_json,
                             to_record, to_svg, uniformity_test, validate_polygon)
from prudent.sampler.geometry import perimeter

VARIANTS = ("two", "three", "all")


def walk_down(variant, choices):
    """Label reached from the root by taking child ``c mod #children`` at each level."""
    label = root(variant)
    for c in choices:
        kids = children(label)
        label = kids[c % len(kids)][0]
    return label


labels = st.builds(walk_down, st.sampled_from(VARIANTS),
                   st.lists(st.integers(0, 10 ** 6), max_size=12))


# -- labels -----------------------------------------------------------------------

def test_roots():
    assert root("two") == TreeLabel("T", "y", 1)
    assert root("three") == TreeLabel("L", "n", 1, 1)
    assert root("all") == TreeLabel("L", "n", 1, 1, 0)


def test_small_children():
    assert [c for c, _ in children(TreeLabel("T", "y", 1))] == [TreeLabel("T", "y", 1),
                                                                TreeLabel("T", "y", 2)]
    assert {c for c, _ in children(root("three"))} == {TreeLabel("T", "y", 1, 0),
                                                       TreeLabel("L", "y", 2, 1)}
    assert {c for c, _ in children(TreeLabel("L", "y", 2, 1))} == {
        TreeLabel("T", "n", 1, 1), TreeLabel("T", "y", 2, 0),
        TreeLabel("L", "y", 3, 1), TreeLabel("L", "y", 2, 2)}


@given(labels)
def test_children_of_valid_labels_are_valid(label):
    assert is_valid(label)
    for child, step in children(label):
        assert is_valid(child), (label, child)
        assert child.variant == label.variant
        assert size(child) <= size(label) + 1


@settings(max_examples=60)
@given(labels, st.integers(0, 5))
def test_ex_is_sum_over_children(label, s):
    table = ExtensionTable()
    total = sum(table.ex(c, s) for c, _ in children(label))
    assert table.ex(label, s + 1) == total


@settings(max_examples=40, deadline=None)
@given(labels, st.integers(0, 6))
def test_level_table_matches_reference(label, s):
    # level s covers labels of size <= m - s, and the table has levels 0..m-2
    m = max(size(label), 2) + s
    table = LevelTable(label.variant, m)
    assert table.ex(label, s) == ExtensionTable().ex(label, s)


def test_ex_base_case():
    assert ex_count(TreeLabel("B", "n", 5, 2, 3), 0) == 1


# -- level counts against series ------------------------------------------------------

def test_level_counts_two():
    assert level_counts("two", 15) == cf.bargraph_one(17).scalars()[2:]


def test_level_counts_three():
    assert level_counts("three", 15) == cf.R_one(17).scalars()[2:]


def test_level_counts_all():
    from prudent.funceq_solver import class_F_counts
    assert level_counts("all", 12) == class_F_counts(14)[2:]


def test_streaming_table_agrees():
    full = LevelTable("three", 70, streaming=False)
    part = LevelTable("three", 70, streaming=True)
    for s in (68, 40, 3, 55):
        assert part.level(s) == full.level(s)


# -- geometry -----------------------------------------------------------------------

def test_vertical_domino():
    p = apply_step(GrowingPolygon("two"), Step(1, 1))
    assert p.cells == {(0, 0), (0, 1)}
    assert p.half_perimeter == 3


def test_horizontal_domino():
    p = apply_step(GrowingPolygon("two"), Step(2))
    assert p.cells == {(0, 0), (-1, 0)}
    assert p.half_perimeter == 3


def test_illegal_step():
    with pytest.raises(IllegalStepError):
        apply_step(GrowingPolygon("two"), Step(5, 1))


@pytest.mark.parametrize("cls", VARIANTS)
def test_exhaustive_matches_oracle(cls):
    for m in range(2, 7):
        polys = exhaustive(cls, m)
        sets = {frozenset(p.cells) for p in polys}
        assert len(sets) == len(polys)
        ocls = "classF" if cls == "all" else cls
        want = {r.cells for r in oracle.enumerate_polygons(m, ocls, keep=True).records
                if r.endpoint == (1, 0) and r.orientation == "cw"}
        assert sets == want
        for p in polys:
            assert p.geometric_label() == p.label
            assert label_from_cells(p.cells, p.label.a, cls) == p.label


@pytest.mark.parametrize("cls,m", [("two", 40), ("three", 40), ("all", 25)])
def test_replay_reproduces_samples(cls, m):
    for s in sample_many(cls, m, 5, seed=3):
        again = replay(s.polygon.steps, cls)
        assert again.cells == s.polygon.cells
        assert perimeter(again.cells) == 2 * m


# -- sampling -------------------------------------------------------------------------

def test_unit_square_sample():
    p = sample("two", 2, random.Random(0))
    assert p.cells == {(0, 0)}


@pytest.mark.parametrize("cls,m", [("two", 30), ("three", 30), ("all", 20)])
def test_samples_validate(cls, m):
    for s in sample_many(cls, m, 20, seed=11):
        validate_polygon(s.polygon, cls, m)


def test_seed_split_is_stable():
    assert derive_seed(1, 0) == derive_seed(1, 0)
    assert derive_seed(1, 0) != derive_seed(1, 1)
    assert 0 <= derive_seed("x", 5) < 2 ** 64


def test_jobs_do_not_change_output():
    a = sample_many("three", 30, 6, seed=5, jobs=1)
    b = sample_many("three", 30, 6, seed=5, jobs=2)
    assert [s.polygon.cells for s in a] == [s.polygon.cells for s in b]


def test_m_above_table_rejected():
    table = LevelTable("two", 10)
    with pytest.raises(ValueError):
        sample_many("two", 11, 1, 0, table)


def test_three_m4_hits_every_polygon():
    rng = random.Random(7)
    seen = {frozenset(sample("three", 4, rng).cells) for _ in range(300)}
    assert len(seen) == 6


def test_uniformity_small():
    res = uniformity_test("two", 5, 2000, seed=1)
    assert res.bins == 13 and res.pvalue > 0.001


def test_uniformity_single_bin():
    res = uniformity_test("three", 2, 50, seed=1)
    assert res.bins == 1 and res.statistic == 0 and res.pvalue == 1.0


def test_uniformity_too_many_bins():
    with pytest.raises(ValueError):
        uniformity_test("three", 14, 10, seed=1)


# -- rendering ------------------------------------------------------------------------

def test_unit_square_outputs():
    poly = GrowingPolygon("two")
    assert to_ascii(poly.cells) == "#\n"
    rec = to_record(poly.cells, "two", 2)
    assert rec["cells"] == [[0, 0]] and rec["half_perimeter"] == 2
    root_el = ET.fromstring(to_svg(poly.cells).split("\n", 1)[1])
    assert len(root_el.findall(".//{http://www.w3.org/2000/svg}rect")) == 1


def test_json_keys():
    import json
    rec = json.loads(to_json({(0, 0), (1, 0)}, "three", 3, seed=9, index=2, generator="g"))
    assert set(rec) == {"class", "half_perimeter", "cells", "endpoint", "seed", "index", "generator"}
    assert rec["cells"] == [[0, 0], [1, 0]] and rec["endpoint"] == [1, 0]


def test_svg_well_formed_at_full_size():
    for s in sample_many("two", 250, 50, seed=2):
        ET.fromstring(render(s.polygon, "svg", seed=2))


def test_render_unknown_format():
    with pytest.raises(ValueError):
        render(GrowingPolygon("two"), "png")
