"""Exact persistence for representations of type A and affine type Ã quivers."""

from .errors import (CircPersError, InputError, MathError, ResourceBound)
from .exactnum import Field, Matrix, Poly
from .quiver import Quiver
from .linrep import Morphism, Representation, decompose

__all__ = [
    "CircPersError", "InputError", "MathError", "ResourceBound",
    "Field", "Matrix", "Poly", "Quiver", "Morphism", "Representation", "decompose",
]
__version__ = "0.1.0"
