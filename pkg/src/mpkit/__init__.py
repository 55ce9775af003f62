"""Matched pairs of groupoids, twisted box algebras, fusion-ring certification."""

__version__ = "0.1.0"
