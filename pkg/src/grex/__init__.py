"""Exact computations with graded quasi-hereditary algebras, Koszulity
checks, Kazhdan-Lusztig polynomials and symmetric-group data."""

__version__ = "0.1.0"
