"""Heegaard Floer rank calculator for knot complexes over GF(2)."""

__version__ = "0.1.0"
