"""Exact scalar rings, sparse matrices, rank and Smith normal form."""

from .rings import (
    ZZ,
    QQ,
    GF,
    IntegerRing,
    LaurentRing,
    Poly,
    PolyRing,
    PrimeField,
    QuotientRing,
    RationalField,
    Ring,
    UnsupportedRingError,
)
from .sparse import SparseMatrix, restrict_scalars
from .snf import SNFResult, dense_snf, rank, snf

__all__ = [
    "ZZ",
    "QQ",
    "GF",
    "Ring",
    "IntegerRing",
    "RationalField",
    "PrimeField",
    "PolyRing",
    "LaurentRing",
    "QuotientRing",
    "Poly",
    "UnsupportedRingError",
    "SparseMatrix",
    "restrict_scalars",
    "SNFResult",
    "snf",
    "dense_snf",
    "rank",
]
