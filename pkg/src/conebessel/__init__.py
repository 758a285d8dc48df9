"""Bessel functions on simple Euclidean Jordan algebras."""
from .errors import MathDomainError
from .jordan import Algebra, Element, get_algebra
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["Algebra", "BACKEND", "Element", "MathDomainError", "get_algebra"]
