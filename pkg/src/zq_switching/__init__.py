"""Switching separability of Z_q edge-weighted graphs."""
__version__ = "0.1.0"
__all__ = ["__version__"]
