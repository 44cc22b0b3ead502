"""Exact coinvariants and conformal blocks for truncated conformal
vertex algebras over logarithmic curves."""

__version__ = "0.1.0"
