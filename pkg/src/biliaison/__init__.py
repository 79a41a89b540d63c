"""Exact workbench for biliaison equivalence of codimension-2 subschemes."""

__version__ = "0.1.0"
