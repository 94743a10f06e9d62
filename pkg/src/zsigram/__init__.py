"""Ramification in iterated preimage towers of rational maps over Q and Q(t)."""

__version__ = "0.1.0"
