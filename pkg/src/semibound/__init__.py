"""Exact verification of the size bound for finite irreducible rational matrix semigroups."""

from .linalg import FpMatrix, Lattice, QMatrix, ZMatrix, hnf_column, parse_rational
from .pipeline import BoundReport, corpus, verify_bound
from .semigroup import SemigroupTable, closure

__all__ = [
    "BoundReport",
    "FpMatrix",
    "Lattice",
    "QMatrix",
    "SemigroupTable",
    "ZMatrix",
    "closure",
    "corpus",
    "hnf_column",
    "parse_rational",
    "verify_bound",
]

__version__ = "0.1.0"
