"""Exact arithmetic for tropical linear spaces: Pluecker vector
validation, matroidal subdivisions of hypersimplices with their full
bounded face structure, duals, minors, stable intersections, tree
spaces, and series-parallel matroids from colored trees.

All computation is over exact rationals; random generation sits behind
explicit 64-bit seeds.
"""

from . import core, kernels, matroid, tutte, plucker, subdivision, sptree

from .core import (
    TroplsError,
    InvalidArgumentError,
    ParseError,
    DegenerateMinorError,
    RankExcessError,
    GenericityBudgetError,
    serialize,
    deserialize,
)
from .matroid import Matroid
from .plucker import PlueckerVector, Point
from .subdivision import Subdivision, Cell

__version__ = "0.1.0"

__all__ = [
    "core", "kernels", "matroid", "tutte", "plucker", "subdivision", "sptree",
    "TroplsError", "InvalidArgumentError", "ParseError", "DegenerateMinorError",
    "RankExcessError", "GenericityBudgetError",
    "serialize", "deserialize",
    "Matroid", "PlueckerVector", "Point", "Subdivision", "Cell",
    "__version__",
]
