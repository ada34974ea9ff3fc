"""Exact workbench for parafermi operators and root-sequence nilpotent matrices."""

__version__ = "0.1.0"
