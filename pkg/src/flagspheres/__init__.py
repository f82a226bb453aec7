"""Transverse spheres in flag manifolds (development stub)."""
