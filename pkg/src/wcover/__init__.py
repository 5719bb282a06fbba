"""Weighted covering and separation numbers of convex bodies and finite metric spaces."""

__version__ = "0.1.0"
