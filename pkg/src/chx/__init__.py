"""Certification toolkit for the complex hyperbolic triangle group with parameters (4, inf, inf; inf)."""
__version__ = "0.1.0"
