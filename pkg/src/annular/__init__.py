"""Exact genus distributions for one- and two-vertex maps."""

__version__ = "0.1.0"
