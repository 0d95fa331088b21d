"""Reproducible small computer-algebra experiments."""

__version__ = "0.1.0"
