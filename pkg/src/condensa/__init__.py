"""Exact decision procedures for symmetry breaking under anyon condensation."""
__version__ = "0.1.0"
