"""Bounding prime exponents of perfect powers in elliptic divisibility sequences
on y^2 = x^3 + Dx, via Frey curves, level lowering and newform elimination."""

__version__ = "0.1.0"
