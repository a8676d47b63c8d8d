"""Exact invariant theory for GL(5) x GL(3) acting on wedge^2 k^5 (x) k^3."""

__version__ = "0.1.0"
