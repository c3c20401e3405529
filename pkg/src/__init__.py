"""Exact engine for q(n+1) Fock modules."""
