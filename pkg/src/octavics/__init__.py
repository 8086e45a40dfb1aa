"""Shioda invariants of binary octavics and a height-ordered database of genus-3
hyperelliptic moduli points in P(2,3,4,5,6,7,8)."""

__version__ = "0.1.0"
