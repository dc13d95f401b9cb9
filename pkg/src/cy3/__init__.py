"""Exact finite-field certificates for a non-liftable Calabi-Yau threefold in
characteristic 3 and for supersingular K3 period data in characteristic 2."""

from .errors import DomainError, UsageError
from .exactla import MatFp
from .gf import GF, FieldElem, FiniteField

__all__ = ["GF", "FiniteField", "FieldElem", "MatFp", "DomainError", "UsageError"]
__version__ = "0.1.0"
