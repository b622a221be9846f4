"""Walled Brauer algebras, their graded diagram presentation, and mixed Schur-Weyl duality."""

__version__ = "0.1.0"
