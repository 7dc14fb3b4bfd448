"""Finite combinatorics of the Thomason model structure on small categories."""

__version__ = "0.1.0"
