"""Exact Mordell-Weil computations for elliptic surfaces built from plane quartics."""

__version__ = "0.1.0"
