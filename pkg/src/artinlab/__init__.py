"""Artinian local algebras over prime fields: invariants, connected-sum
decomposition, and Poincare-series verification."""

__version__ = "0.1.0"
