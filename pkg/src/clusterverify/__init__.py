"""Exact cluster-variable engine for acyclic skew-symmetric cluster algebras."""

__version__ = "0.1.0"
