"""Exact verification engine for the formal shift operator on Yangian doubles."""

from .cartan import CartanDatum, WeightVector, build_cartan, sym_pair
from .freealg import DOUBLE, YANGIAN, FreeAlgebra, FreeElem

__version__ = "0.1.0"

__all__ = [
    "CartanDatum",
    "WeightVector",
    "build_cartan",
    "sym_pair",
    "FreeAlgebra",
    "FreeElem",
    "YANGIAN",
    "DOUBLE",
]
