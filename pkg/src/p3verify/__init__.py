"""Workbench for the algebra structure of connected Hopf algebras of dimension p^3."""

__version__ = "0.1.0"
