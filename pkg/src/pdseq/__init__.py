"""Automatic sequences, truncated power series over prime fields, and the
check suite for the formal inverse of the period-doubling sequence."""

from . import automata, catalog, checks, kernel, morphisms, numeration, series

__all__ = ["automata", "catalog", "checks", "kernel", "morphisms", "numeration", "series"]
__version__ = "0.1.0"
