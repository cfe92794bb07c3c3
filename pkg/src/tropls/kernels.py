"""Kernel dispatch: compiled extension when available, else pure Python.

The compiled backend works in fixed-width integers, so each wrapper
routes to it only inside proven-safe input bounds; everything else
falls through to the arbitrary-precision reference implementation.
Both backends scan in the same order and return identical values.
"""

from __future__ import annotations

from math import comb
from typing import Optional, Sequence

from . import _pykernels as _py

try:
    from . import _ckernels as _c
except ImportError:
    _c = None

BACKEND = "compiled" if _c is not None else "python"

# |scaled| below 2**47 keeps every Cramer cofactor sum inside int64
# for n <= 7 (7! * 2**47 * 7 plus slack terms stays under 2**63)
_HULL_SCALE_LIMIT = 1 << 47
_RELATION_SCALE_LIMIT = 1 << 61


def exchange_witness(masks: Sequence[int], n: int) -> Optional[tuple[int, int, int]]:
    if _c is not None and n <= 31:
        return _c.exchange_witness(list(masks), n)
    return _py.exchange_witness(masks, n)


def matroid_catalog(n: int, d: int) -> list[int]:
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    m = comb(n, d)
    if m > 22:
        raise ValueError("catalog enumeration is limited to comb(n, d) <= 22")
    if _c is not None:
        return _c.matroid_catalog(n, d)
    return _py.matroid_catalog(n, d)


def lower_hull_facets(n: int, d: int, scaled: Sequence[int]) -> list[int]:
    scaled = list(scaled)
    if (_c is not None and 2 <= n <= 7 and comb(n, d) <= 63
            and all(-_HULL_SCALE_LIMIT < x < _HULL_SCALE_LIMIT for x in scaled)):
        return _c.lower_hull_facets(n, d, scaled)
    return _py.lower_hull_facets(n, d, scaled)


def validate_relations(n: int, d: int, scaled: Sequence[int]) -> Optional[tuple[int, int]]:
    scaled = list(scaled)
    if (_c is not None and n <= 31
            and all(-_RELATION_SCALE_LIMIT < x < _RELATION_SCALE_LIMIT for x in scaled)):
        return _c.validate_relations(n, d, scaled)
    return _py.validate_relations(n, d, scaled)
