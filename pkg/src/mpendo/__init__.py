"""Symbolic calculus for Arthur parameters of metaplectic groups."""

from .catalog import Catalog, load_catalog, twist_constituent, validate_cross_constraints
from .mu4 import Mu4
from .parameters import ArthurParameter, LParameter

__all__ = [
    "ArthurParameter",
    "Catalog",
    "LParameter",
    "Mu4",
    "load_catalog",
    "twist_constituent",
    "validate_cross_constraints",
]
