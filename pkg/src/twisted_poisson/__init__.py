"""Exact computer algebra for the twisted double of a semisimple Lie algebra
and the Poisson Hopf algebra of its matrix coefficients."""

__version__ = "0.1.0"
