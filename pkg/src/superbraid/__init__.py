"""Homology of braid groups with coefficients in superelliptic-curve homology."""

__version__ = "0.1.0"
