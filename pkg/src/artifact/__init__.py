"""Exact Newton-polytope and saturation tools for families of polynomials."""

__version__ = "0.1.0"
