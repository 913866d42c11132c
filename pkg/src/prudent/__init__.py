"""Exact enumeration and uniform sampling of prudent polygons."""

__version__ = "0.1.0"
