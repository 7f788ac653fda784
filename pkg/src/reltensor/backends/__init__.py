"""Concrete desk-scale Mal'cev category backends behind one interface."""

from .base import (
    BackendError,
    CategoryBackend,
    GoursatRelation,
    SubquotientObject,
    delta_of_object,
    goursat_relations,
    nondegeneracy_report,
    omega,
    omega_of_object,
    subquotients,
)
from .setop import SetOpBackend
from .vectfq import VectFqBackend
from .groups import GroupBackend

__all__ = [
    "BackendError",
    "CategoryBackend",
    "GoursatRelation",
    "SubquotientObject",
    "SetOpBackend",
    "VectFqBackend",
    "GroupBackend",
    "delta_of_object",
    "goursat_relations",
    "nondegeneracy_report",
    "omega",
    "omega_of_object",
    "subquotients",
]
