"""Sparse Ising / weighted MaxCut workbench for the large Gset instances."""

__version__ = "0.1.0"
