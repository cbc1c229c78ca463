# tropadic/adic/__init__.py
"""Exact kernel for matrix-defined prime congruences on toric monoid semirings."""
