"""Polygon output: SVG, ASCII art and JSON."""

import json

CELL = 10


def _bounds(cells):
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    return min(xs), max(xs), min(ys), max(ys)


def to_svg(cells, title=None):
    """One ``<rect>`` per cell, ``CELL`` units wide, y pointing up, one-cell margin."""
    xmin, xmax, ymin, ymax = _bounds(cells)
    w = (xmax - xmin + 3) * CELL
    h = (ymax - ymin + 3) * CELL
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" '
           f'width="{w}" height="{h}">']
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<g fill="#9ecae1" stroke="#08306b" stroke-width="1px">')
    for x, y in sorted(cells):
        px = (x - xmin + 1) * CELL
        py = (ymax - y + 1) * CELL
        out.append(f'<rect x="{px}" y="{py}" width="{CELL}" height="{CELL}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def to_ascii(cells):
    """``#`` for a cell, ``.`` for an empty square of the box; top row first."""
    cells = set(cells)
    xmin, xmax, ymin, ymax = _bounds(cells)
    lines = []
    for y in range(ymax, ymin - 1, -1):
        lines.append("".join("#" if (x, y) in cells else "." for x in range(xmin, xmax + 1)))
    return "\n".join(lines) + "\n"


def to_record(cells, cls, half_perimeter, seed=0, index=0, generator="",
              endpoint=(1, 0)):
    return {
        "class": cls,
        "half_perimeter": int(half_perimeter),
        "cells": [[x, y] for x, y in sorted(cells)],
        "endpoint": list(endpoint),
        "seed": int(seed),
        "index": int(index),
        "generator": generator,
    }


def to_json(cells, cls, half_perimeter, seed=0, index=0, generator=""):
    return json.dumps(to_record(cells, cls, half_perimeter, seed, index, generator)) + "\n"


def render(poly, fmt, cls=None, seed=0, index=0, generator=""):
    """Bytes of ``poly`` (anything with ``cells`` and ``half_perimeter``) in ``fmt``."""
    cls = cls or poly.label.variant
    if fmt == "svg":
        title = f"{cls} prudent polygon, half-perimeter {poly.half_perimeter}, seed {seed}"
        return to_svg(poly.cells, title).encode()
    if fmt == "ascii":
        return to_ascii(poly.cells).encode()
    if fmt == "json":
        return to_json(poly.cells, cls, poly.half_perimeter, seed, index, generator).encode()
    raise ValueError(f"unknown format {fmt!r}")
