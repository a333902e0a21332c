"""Congruence invariants of point triples in quaternionic hyperbolic space."""
from .errors import (
    CoincidentPointsError,
    DegenerateError,
    DimensionError,
    DomainError,
    InputError,
    NotCongruentError,
    QuatHypError,
    SignError,
)
from .hermspace import HermitianSpace, ProjectivePoint, Sign
from .quaternion import ComplexRep, Quaternion, complex_rep, conjugator_to_complex, similar

__version__ = "0.1.0"

__all__ = [
    "CoincidentPointsError",
    "ComplexRep",
    "DegenerateError",
    "DimensionError",
    "DomainError",
    "HermitianSpace",
    "InputError",
    "NotCongruentError",
    "ProjectivePoint",
    "QuatHypError",
    "Quaternion",
    "Sign",
    "SignError",
    "complex_rep",
    "conjugator_to_complex",
    "similar",
]
