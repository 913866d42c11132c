"""Uniform random prudent polygons via generating trees."""

from .geometry import GrowingPolygon, IllegalStepError, apply_step, label_from_cells, replay
from .labels import ROOTS, Step, TreeLabel, children, is_valid, root, size
from .render import render, to_ascii, to_json, to_record, to_svg
from .sampling import (GENERATOR, Sample, ValidationError, canonical_hash, derive_seed,
                       exhaustive, level_counts, sample, sample_many, sample_stream,
                       uniformity_test, validate_polygon)
from .tables import ExtensionTable, LevelTable

ex_count = ExtensionTable()

__all__ = [
    "GrowingPolygon", "IllegalStepError", "apply_step", "label_from_cells", "replay",
    "ROOTS", "Step", "TreeLabel", "children", "is_valid", "root", "size",
    "render", "to_ascii", "to_json", "to_record", "to_svg",
    "GENERATOR", "Sample", "ValidationError", "canonical_hash", "derive_seed", "exhaustive",
    "level_counts", "sample", "sample_many", "sample_stream", "uniformity_test",
    "validate_polygon", "ExtensionTable", "LevelTable", "ex_count",
]
