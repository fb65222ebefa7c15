"""Finite machinery for encoded constraint templates over word signatures."""

__version__ = "0.1.0"
