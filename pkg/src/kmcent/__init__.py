"""Symmetric centralizers of real roots in Kac-Moody root systems."""

__version__ = "0.1.0"
