"""Numerical companion to the regularity theory of n/2-harmonic maps into spheres."""

from .spectral import PeriodicGrid

__version__ = "0.1.0"
__all__ = ["PeriodicGrid", "__version__"]
