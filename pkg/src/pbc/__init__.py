"""Exact numerical calculus for blowups of Poisson surfaces."""

__version__ = "0.1.0"
