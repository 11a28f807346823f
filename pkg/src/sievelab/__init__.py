"""Computational laboratory for sieve bounds and mod-l Galois image censuses."""

__version__ = "0.1.0"
