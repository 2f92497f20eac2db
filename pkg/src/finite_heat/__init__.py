"""Exact computations around finite heat kernel expansions for rational KdV potentials."""

__version__ = "0.1.0"
