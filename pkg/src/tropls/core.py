"""Exact arithmetic, subset combinatorics, and serialization.

Everything downstream works over exact rationals (stdlib Fraction) and
d-subsets of {1..n} kept in colexicographic order.  The colex order is
fixed once here and defines the dense-array indexing used by every other
module and by the JSON file formats.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

Rat = Fraction

Subset = tuple  # strictly increasing ints in 1..n


class TroplsError(Exception):
    """Base class for structured errors raised by this package."""

    kind = "error"


class InvalidArgumentError(TroplsError, ValueError):
    kind = "invalid-argument"


class ParseError(TroplsError, ValueError):
    kind = "parse-error"

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DegenerateMinorError(TroplsError):
    kind = "degenerate-minor"


class RankExcessError(TroplsError):
    kind = "rank-excess"


class GenericityBudgetError(TroplsError):
    kind = "resource"


# --- subsets, colex order ------------------------------------------------


@lru_cache(maxsize=None)
def enumerate_subsets(n: int, d: int) -> tuple[Subset, ...]:
    """All d-subsets of {1..n} as increasing tuples, in colex order.

    Colex: compare largest elements first; e.g. (4,2) gives
    12, 13, 23, 14, 24, 34.  This order indexes every dense array over
    the d-subsets in the package and in the JSON formats.
    """
    if n < 0 or d < 0 or d > n:
        raise InvalidArgumentError(f"no {d}-subsets of a {n}-set")
    if d == 0:
        return ((),)
    if d == n:
        return (tuple(range(1, n + 1)),)
    lower = enumerate_subsets(n - 1, d)
    withtop = tuple(s + (n,) for s in enumerate_subsets(n - 1, d - 1))
    return lower + withtop


@lru_cache(maxsize=None)
def subset_index(n: int, d: int) -> dict[Subset, int]:
    return {s: i for i, s in enumerate(enumerate_subsets(n, d))}


@lru_cache(maxsize=None)
def subset_masks(n: int, d: int) -> tuple[int, ...]:
    """Bitmask (element i -> bit i-1) of each subset, in colex order."""
    return tuple(subset_to_bits(s) for s in enumerate_subsets(n, d))


def subset_to_bits(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << (i - 1)
    return m


def bits_to_subset(m: int) -> Subset:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def check_subset(s: Sequence[int], n: int) -> Subset:
    t = tuple(s)
    if any(not isinstance(i, int) or i < 1 or i > n for i in t):
        raise InvalidArgumentError(f"subset {t} not within 1..{n}")
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise InvalidArgumentError(f"subset {t} not strictly increasing")
    return t


# --- bivariate integer polynomials ---------------------------------------


class BivariatePoly:
    """Integer-coefficient polynomial in two variables.

    Stored as a map from exponent pairs (i, j) to nonzero integers.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int], int] | None = None):
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            if not (isinstance(i, int) and isinstance(j, int) and i >= 0 and j >= 0):
                raise InvalidArgumentError(f"bad exponent pair {(i, j)}")
            if c:
                clean[(i, j)] = int(c)
        self.coeffs = clean

    @staticmethod
    def zero() -> "BivariatePoly":
        return BivariatePoly({})

    @staticmethod
    def monomial(i: int, j: int, c: int = 1) -> "BivariatePoly":
        return BivariatePoly({(i, j): c})

    def coefficient(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BivariatePoly(out)

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        return self + other.scaled(-1)

    def scaled(self, k: int) -> "BivariatePoly":
        return BivariatePoly({e: k * c for e, c in self.coeffs.items()})

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                k = (a + a2, b + b2)
                out[k] = out.get(k, 0) + c * c2
        return BivariatePoly(out)

    def shifted(self, dx: int, dy: int) -> "BivariatePoly":
        """The polynomial q with q(x, y) = self(x + dx, y + dy)."""
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.coeffs.items():
            for i in range(a + 1):
                for j in range(b + 1):
                    k = (i, j)
                    term = c * comb(a, i) * comb(b, j) * dx ** (a - i) * dy ** (b - j)
                    out[k] = out.get(k, 0) + term
        return BivariatePoly(out)

    def eval_at(self, x: Rat, y: Rat) -> Rat:
        return sum((c * Fraction(x) ** a * Fraction(y) ** b
                    for (a, b), c in self.coeffs.items()), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b) in sorted(self.coeffs, key=lambda e: (e[0] + e[1], e)):
            c = self.coeffs[(a, b)]
            mono = "".join(
                [f"x^{a}" if a > 1 else "x" if a == 1 else "",
                 f"y^{b}" if b > 1 else "y" if b == 1 else ""])
            parts.append(f"{c}{mono}" if mono == "" or abs(c) != 1
                         else (mono if c == 1 else f"-{mono}"))
        return " + ".join(parts)


# --- rationals as text ----------------------------------------------------

_RAT_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


def rat_from_str(text: str) -> Rat:
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def rat_to_str(x: Rat) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --- serialization --------------------------------------------------------
#
# serialize() renders any registered domain value to text; deserialize()
# parses it back, detecting the type from the payload shape.  Domain
# modules register their codecs at import time.

_SERIALIZERS: list[tuple[type, Callable[[object], object]]] = []
_SNIFFERS: list[tuple[Callable[[object], bool], Callable[[object], object]]] = []


def register_codec(cls: type, to_jsonable: Callable, sniff: Callable, parse: Callable) -> None:
    _SERIALIZERS.append((cls, to_jsonable))
    _SNIFFERS.append((sniff, parse))


def to_jsonable(value: object) -> object:
    # exact type first so subclasses (e.g. point types built on tuple)
    # reach their own codec before a base-class one
    for cls, enc in _SERIALIZERS:
        if type(value) is cls:
            return enc(value)
    for cls, enc in _SERIALIZERS:
        if isinstance(value, cls):
            return enc(value)
    raise InvalidArgumentError(f"cannot serialize values of type {type(value).__name__}")


def serialize(value: object) -> str:
    if isinstance(value, Fraction):
        return rat_to_str(value)
    return json.dumps(to_jsonable(value), sort_keys=True)


def loads_json(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.pos) from None


def deserialize(text: str) -> object:
    if _RAT_RE.match(text):
        return rat_from_str(text)
    payload = loads_json(text)
    return from_jsonable(payload)


def from_jsonable(payload: object) -> object:
    for sniff, parse in _SNIFFERS:
        if sniff(payload):
            return parse(payload)
    raise ParseError(f"unrecognized payload shape: {type(payload).__name__}")


_EXP_RE = re.compile(r"^\((\d+),\s*(\d+)\)$")


def _poly_to_jsonable(p: BivariatePoly) -> dict:
    return {f"({a},{b})": c for (a, b), c in sorted(p.coeffs.items())}


def _poly_sniff(payload: object) -> bool:
    return (isinstance(payload, dict) and payload
            and all(isinstance(k, str) and _EXP_RE.match(k) and isinstance(v, int)
                    for k, v in payload.items()))


def _poly_parse(payload: dict) -> BivariatePoly:
    coeffs = {}
    for k, v in payload.items():
        m = _EXP_RE.match(k)
        coeffs[(int(m.group(1)), int(m.group(2)))] = v
    return BivariatePoly(coeffs)


def _subset_sniff(payload: object) -> bool:
    return isinstance(payload, list) and all(isinstance(i, int) for i in payload)


def _subset_to_jsonable(s: tuple) -> list:
    if not all(isinstance(i, int) for i in s):
        raise InvalidArgumentError("subsets serialize as plain integer lists")
    return list(s)


register_codec(BivariatePoly, _poly_to_jsonable, _poly_sniff, _poly_parse)
register_codec(tuple, _subset_to_jsonable, _subset_sniff,
               lambda payload: tuple(payload))
