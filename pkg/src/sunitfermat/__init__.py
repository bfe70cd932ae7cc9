"""Exact S-unit and Frey-curve machinery for generalized Fermat equations over real quadratic fields."""

__version__ = "0.1.0"
