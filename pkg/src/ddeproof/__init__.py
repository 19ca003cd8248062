"""Validated-numerics proof engine for periodic orbits of x'(t) = -K sin(x(t-1))."""

__version__ = "0.1.0"
