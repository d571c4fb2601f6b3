"""Exact combinatorics of conical representations for direct limits of symmetric spaces."""

__version__ = "0.1.0"
