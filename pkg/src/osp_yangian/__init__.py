"""Yangians of B(m, n) from Borel data: relations, verification and Hopf structure."""

__version__ = "0.1.0"
