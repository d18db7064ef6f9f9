"""Exact analysis of Coxeter connections for simple algebraic groups."""

__version__ = "0.1.0"
