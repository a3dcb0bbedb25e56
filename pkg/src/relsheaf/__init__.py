"""Presheaves, relational sheaves and the functors between them over finite Heyting algebras."""

from .errors import *  # noqa: F401,F403
from .heyting import HeytingAlgebra, build_algebra, downset_algebra
from .pretrans import Mode, PreTransformation, RelMorphism, RelObject
from .presheaf import Presheaf, Transformation, is_sheaf, make_presheaf
from .relations import FiniteSet, Relation

__version__ = "0.1.0"

__all__ = [
    "HeytingAlgebra", "build_algebra", "downset_algebra",
    "Mode", "PreTransformation", "RelMorphism", "RelObject",
    "Presheaf", "Transformation", "is_sheaf", "make_presheaf",
    "FiniteSet", "Relation",
]
