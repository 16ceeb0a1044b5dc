"""Exact computations for EPW sextics and K3^[2]-type lattices."""

__version__ = "0.1.0"
