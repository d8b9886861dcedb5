"""Mechanized checks for four-element supports in group algebras of torsion-free groups."""
from .decide import TC_BACKEND, Budget
from .present import Presentation
from .word import FreeWord

__version__ = "0.1.0"

__all__ = ["Budget", "FreeWord", "Presentation", "TC_BACKEND", "__version__"]
