"""Exact equivariant Euler characteristics for curves with finite group actions."""

__version__ = "0.1.0"
