"""Exact calculus of projective Schur functions, spin Hurwitz numbers and BKP tau-functions."""

__version__ = "0.1.0"
