"""Exact computations with Drinfeld modules and Gekeler's modular forms g, Delta, h."""

__version__ = "0.1.0"
