"""Numerical laboratory for Tricomi-type equations u_tt = t^alpha u_xx."""

__version__ = "0.1.0"
