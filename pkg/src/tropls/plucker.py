"""Tropical Pluecker vectors and their operation algebra.

A vector stores one exact rational value per d-subset of its ground
labels, in colex order.  Ground labels are kept explicit so minors
stay aligned with matroid minors; for the standard ground 1..n the
JSON shape is {"n","d","values"} with keys like "[1,2]".
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

from . import kernels
from .core import (
    GenericityBudgetError,
    InvalidArgumentError,
    ParseError,
    Rat,
    Subset,
    enumerate_subsets,
    rat_from_str,
    rat_to_str,
    register_codec,
)
from .matroid import Matroid, _from_masks, labels_to_mask, loops_coloops, mask_to_labels


class Point(tuple):
    """A point of n-space with exact rational coordinates.

    Behaves as a tuple of Fraction; + and - act coordinatewise.
    """

    def __new__(cls, coords: Iterable):
        return super().__new__(cls, (Fraction(c) for c in coords))

    def __add__(self, other):
        if len(self) != len(other):
            raise InvalidArgumentError("point dimensions differ")
        return Point(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise InvalidArgumentError("point dimensions differ")
        return Point(a - b for a, b in zip(self, other))

    def __repr__(self):
        return "Point(" + ", ".join(str(c) for c in self) + ")"

    @staticmethod
    def zero(n: int) -> "Point":
        return Point([0] * n)


class ValidationWitness(NamedTuple):
    """A violated four-term relation: support S, the quadruple, and the
    three pair sums in the fixed order (ij|kl, ik|jl, il|jk)."""
    support: Subset
    quad: tuple
    sums: tuple


@lru_cache(maxsize=None)
def _position_subsets(n: int, d: int) -> tuple:
    return tuple(enumerate_subsets(n, d))


class PlueckerVector:
    """Exact values on the d-subsets of a labeled ground set."""

    __slots__ = ("ground", "d", "values", "_index")

    def __init__(self, ground: Sequence[int], d: int, values: Sequence):
        ground = tuple(ground)
        if list(ground) != sorted(set(ground)) or (ground and ground[0] < 1):
            raise InvalidArgumentError("ground must be strictly increasing positive labels")
        if not 0 <= d <= len(ground):
            raise InvalidArgumentError("need 0 <= d <= number of ground elements")
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != math.comb(len(ground), d):
            raise InvalidArgumentError(
                f"expected {math.comb(len(ground), d)} values, got {len(vals)}")
        self.ground = ground
        self.d = d
        self.values = vals
        self._index = None

    @property
    def n(self) -> int:
        return len(self.ground)

    def subsets(self) -> list:
        """The d-subsets of the ground labels, in colex order."""
        g = self.ground
        return [tuple(g[i - 1] for i in pos) for pos in _position_subsets(self.n, self.d)]

    def subset_masks(self) -> list:
        """Label bitmasks of the d-subsets, aligned with values."""
        return [labels_to_mask(s) for s in self.subsets()]

    def index_of(self, subset: Iterable[int]) -> int:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.subsets())}
        key = tuple(sorted(subset))
        if key not in self._index:
            raise InvalidArgumentError(f"{key} is not a d-subset of the ground set")
        return self._index[key]

    def value_at(self, subset: Iterable[int]) -> Fraction:
        return self.values[self.index_of(subset)]

    def ground_mask(self) -> int:
        return labels_to_mask(self.ground)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PlueckerVector) and self.ground == other.ground
                and self.d == other.d and self.values == other.values)

    def __hash__(self) -> int:
        return hash((self.ground, self.d, self.values))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{''.join(map(str, s))}:{v}" for s, v in zip(self.subsets(), self.values))
        if len(pairs) > 120:
            pairs = pairs[:117] + "..."
        return f"PlueckerVector(n={self.n}, d={self.d}, {pairs})"


def standard(n: int, d: int, values: Sequence) -> PlueckerVector:
    return PlueckerVector(range(1, n + 1), d, values)


def scaled_integer_values(p: PlueckerVector) -> tuple:
    """(integer values, common denominator L) with values = ints / L."""
    L = math.lcm(*(v.denominator for v in p.values)) if p.values else 1
    return [int(v * L) for v in p.values], L


def validate(p: PlueckerVector) -> Optional[ValidationWitness]:
    """None when every four-term minimum is attained twice, else the
    first violated relation in colex scan order."""
    if p.d < 2 or p.n - p.d < 2:
        return None
    scaled, _ = scaled_integer_values(p)
    hit = kernels.validate_relations(p.n, p.d, scaled)
    if hit is None:
        return None
    s_bits, quad_bits = hit
    spos = mask_to_labels(s_bits)
    qpos = mask_to_labels(quad_bits)
    s_labels = tuple(p.ground[i - 1] for i in spos)
    i, j, k, l = (p.ground[i - 1] for i in qpos)
    sums = (
        p.value_at(s_labels + (i, j)) + p.value_at(s_labels + (k, l)),
        p.value_at(s_labels + (i, k)) + p.value_at(s_labels + (j, l)),
        p.value_at(s_labels + (i, l)) + p.value_at(s_labels + (j, k)),
    )
    return ValidationWitness(s_labels, (i, j, k, l), sums)


def is_valid(p: PlueckerVector) -> bool:
    return validate(p) is None


def _argmin_masks(p: PlueckerVector, w: Sequence) -> tuple:
    """(argmin basis masks, minimum) of value minus the w-weight."""
    if len(w) != p.n:
        raise InvalidArgumentError("point dimension must match the ground size")
    wmap = {p.ground[i]: Fraction(w[i]) for i in range(p.n)}
    best = None
    arg = []
    for s, v in zip(p.subsets(), p.values):
        cur = v - sum(wmap[e] for e in s)
        if best is None or cur < best:
            best = cur
            arg = [labels_to_mask(s)]
        elif cur == best:
            arg.append(labels_to_mask(s))
    return arg, best


def minimizing_matroid(p: PlueckerVector, w: Sequence) -> Matroid:
    """The matroid whose bases minimize p_I minus the w-weight of I."""
    arg, _ = _argmin_masks(p, w)
    hit = kernels.exchange_witness(arg, p.ground_mask().bit_length())
    if hit is not None:
        b1, b2, xbit = hit
        raise InvalidArgumentError(
            "not a tropical Pluecker vector: argmin fails exchange at "
            f"B1={mask_to_labels(b1)}, B2={mask_to_labels(b2)}, x={xbit + 1}")
    return Matroid(p.ground_mask(), p.d, tuple(sorted(arg)))


def contains(p: PlueckerVector, w: Sequence) -> bool:
    loops, _ = loops_coloops(minimizing_matroid(p, w))
    return not loops


def in_bounded_part(p: PlueckerVector, w: Sequence) -> bool:
    loops, coloops = loops_coloops(minimizing_matroid(p, w))
    return not loops and not coloops


def dualize(p: PlueckerVector) -> PlueckerVector:
    """Value at I becomes the value at the ground complement of I."""
    gmask = p.ground_mask()
    out = PlueckerVector(p.ground, p.n - p.d, [0] * math.comb(p.n, p.n - p.d))
    vals = [None] * len(out.values)
    lookup = {m: v for m, v in zip(p.subset_masks(), p.values)}
    for idx, m in enumerate(out.subset_masks()):
        vals[idx] = lookup[gmask & ~m]
    q = PlueckerVector(p.ground, p.n - p.d, vals)
    wit = validate(q)
    if wit is not None:
        raise AssertionError(f"dual of a valid vector must be valid: {wit}")
    return q


def minor(p: PlueckerVector, delete: Iterable[int], contract: Iterable[int]) -> PlueckerVector:
    """Restrict to the ground without delete/contract; each new value
    is the old value at I union contract."""
    dset = set(delete)
    tset = set(contract)
    if dset & tset:
        raise InvalidArgumentError("delete and contract must be disjoint")
    if not (dset | tset) <= set(p.ground):
        raise InvalidArgumentError("subset outside the ground set")
    if len(tset) > p.d:
        raise InvalidArgumentError("cannot contract more than d elements")
    new_ground = tuple(e for e in p.ground if e not in dset and e not in tset)
    new_d = p.d - len(tset)
    if new_d > len(new_ground):
        raise InvalidArgumentError("deletion leaves fewer than the required rank of elements")
    tkey = tuple(sorted(tset))
    out = PlueckerVector(new_ground, new_d, [0] * math.comb(len(new_ground), new_d))
    vals = [p.value_at(tuple(sorted(s + tkey))) for s in out.subsets()]
    return PlueckerVector(new_ground, new_d, vals)


def translate(p: PlueckerVector, v: Sequence) -> PlueckerVector:
    """Add the v-weight of I to each value."""
    if len(v) != p.n:
        raise InvalidArgumentError("point dimension must match the ground size")
    vmap = {p.ground[i]: Fraction(v[i]) for i in range(p.n)}
    vals = [val + sum(vmap[e] for e in s) for s, val in zip(p.subsets(), p.values)]
    return PlueckerVector(p.ground, p.d, vals)


def normalized(p: PlueckerVector) -> PlueckerVector:
    """Subtract the minimum value; never applied implicitly."""
    lo = min(p.values)
    return PlueckerVector(p.ground, p.d, [v - lo for v in p.values])


def stable_intersection(p: PlueckerVector, p2: PlueckerVector) -> PlueckerVector:
    """Minimum of value sums over basis pairs covering the ground and
    meeting exactly in the indexing subset."""
    if p.ground != p2.ground:
        raise InvalidArgumentError("vectors must share a ground set")
    n = p.n
    if p.d + p2.d < n:
        raise InvalidArgumentError("ranks too small: need d + d' >= n")
    gmask = p.ground_mask()
    dq = p.d + p2.d - n
    out = PlueckerVector(p.ground, dq, [0] * math.comb(n, dq))
    best: dict = {}
    masks1 = p.subset_masks()
    masks2 = p2.subset_masks()
    for m1, v1 in zip(masks1, p.values):
        for m2, v2 in zip(masks2, p2.values):
            if (m1 | m2) == gmask:
                j = m1 & m2
                s = v1 + v2
                if j not in best or s < best[j]:
                    best[j] = s
    vals = []
    for m in out.subset_masks():
        if m not in best:
            raise AssertionError("every intersection subset must come from a covering pair")
        vals.append(best[m])
    q = PlueckerVector(p.ground, dq, vals)
    wit = validate(q)
    if wit is not None:
        raise AssertionError(f"stable intersection of valid vectors must be valid: {wit}")
    return q


def hyperplane(c: Sequence) -> PlueckerVector:
    """Rank n-1 vector whose value on the complement of {i} is c_i."""
    coords = [Fraction(x) for x in c]
    n = len(coords)
    if n < 1:
        raise InvalidArgumentError("need at least one coordinate")
    out = PlueckerVector(range(1, n + 1), n - 1, [0] * n)
    vals = [None] * n
    for idx, s in enumerate(out.subsets()):
        missing = (set(range(1, n + 1)) - set(s)).pop()
        vals[idx] = coords[missing - 1]
    q = PlueckerVector(range(1, n + 1), n - 1, vals)
    assert validate(q) is None, "hyperplane vectors satisfy the relations"
    return q


def corank_vector(M: Matroid) -> PlueckerVector:
    """Value at I is minus the rank of I in M; the bases of M are the
    argmin at the origin (asserted)."""
    from .matroid import _rank_mask, is_loop_free

    if not is_loop_free(M):
        raise InvalidArgumentError("corank vectors need a loop-free matroid")
    ground = M.elements
    out = PlueckerVector(ground, M.rank, [0] * math.comb(M.n, M.rank))
    vals = [-Fraction(_rank_mask(M, labels_to_mask(s))) for s in out.subsets()]
    q = PlueckerVector(ground, M.rank, vals)
    wit = validate(q)
    if wit is not None:
        raise AssertionError(f"corank vector must satisfy the relations: {wit}")
    arg, _ = _argmin_masks(q, [0] * q.n)
    if tuple(sorted(arg)) != M.bases:
        raise AssertionError("argmin of the corank vector must be the basis set")
    return q


def tree_plucker(t) -> PlueckerVector:
    """Rank-2 vector from a leaf-weighted tree: minus half the leaf
    distance for each leaf pair."""
    dist = t.leaf_distance_matrix()
    n = t.leaf_count()
    out = PlueckerVector(range(1, n + 1), 2, [0] * math.comb(n, 2))
    vals = [-Fraction(dist[(i, j)]) / 2 for (i, j) in out.subsets()]
    q = PlueckerVector(range(1, n + 1), 2, vals)
    wit = validate(q)
    if wit is not None:
        raise AssertionError(f"tree metrics satisfy the four-point relations: {wit}")
    return q


def pair_sum_lift(p2: PlueckerVector, d: int) -> PlueckerVector:
    """Rank-d vector whose value on I sums the rank-2 values over the
    pairs inside I."""
    if p2.d != 2:
        raise InvalidArgumentError("pair-sum lift starts from a rank-2 vector")
    if not 0 <= d <= p2.n:
        raise InvalidArgumentError("need 0 <= d <= n")
    out = PlueckerVector(p2.ground, d, [0] * math.comb(p2.n, d))
    vals = []
    for s in out.subsets():
        vals.append(sum((p2.value_at(c) for c in combinations(s, 2)), Fraction(0)))
    q = PlueckerVector(p2.ground, d, vals)
    wit = validate(q)
    if wit is not None:
        raise InvalidArgumentError(f"pair-sum lift of an invalid rank-2 vector: {wit}")
    return q


_GENERIC_BOUND = 1 << 31
_GENERIC_TRIES = 32


def generic_translation(p: PlueckerVector, p2: PlueckerVector, seed: int) -> tuple:
    """Sample integer translations v of p2 until every loop-free cell
    pair with intersecting dual cells is transverse; returns (v,
    checked pair list) or raises after the retry budget.
    """
    from . import subdivision

    if p.ground != p2.ground:
        raise InvalidArgumentError("vectors must share a ground set")
    if p.d + p2.d < p.n:
        raise InvalidArgumentError("ranks too small: need d + d' >= n")
    rng = random.Random(seed)
    for _ in range(_GENERIC_TRIES):
        v = Point([rng.randrange(-_GENERIC_BOUND, _GENERIC_BOUND) for _ in range(p.n)])
        ok, pairs, _bad = subdivision.transversality_certificate(p, translate(p2, v))
        if ok:
            return v, pairs
    raise GenericityBudgetError(
        f"no transverse translation found in {_GENERIC_TRIES} draws from seed {seed}")


def _subset_key(s: Subset) -> str:
    return "[" + ",".join(str(e) for e in s) + "]"


def _parse_subset_key(key: str) -> Subset:
    body = key.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"bad subset key {key!r}")
    inner = body[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(x) for x in inner.split(","))
    except ValueError as e:
        raise ParseError(f"bad subset key {key!r}: {e}") from None


def _plucker_to_jsonable(p: PlueckerVector):
    values = {_subset_key(s): rat_to_str(v) for s, v in zip(p.subsets(), p.values)}
    if p.ground == tuple(range(1, p.n + 1)):
        return {"n": p.n, "d": p.d, "values": values}
    return {"ground": list(p.ground), "d": p.d, "values": values}


def _plucker_sniff(obj) -> bool:
    return isinstance(obj, dict) and "d" in obj and "values" in obj and ("n" in obj or "ground" in obj)


def _plucker_parse(obj) -> PlueckerVector:
    ground = range(1, int(obj["n"]) + 1) if "n" in obj else [int(e) for e in obj["ground"]]
    d = int(obj["d"])
    raw = obj["values"]
    if not isinstance(raw, dict):
        raise ParseError("values must be a subset-to-rational map")
    shell = PlueckerVector(ground, d, [0] * math.comb(len(tuple(ground)), d))
    want = shell.subsets()
    seen = {}
    for key, sval in raw.items():
        s = tuple(sorted(_parse_subset_key(key)))
        if not isinstance(sval, str):
            raise ParseError(f"value for {key!r} must be a rational string")
        seen[s] = rat_from_str(sval)
    missing = [s for s in want if s not in seen]
    extra = [s for s in seen if s not in set(want)]
    if missing or extra:
        raise ParseError(
            f"values must cover exactly the d-subsets (missing {missing[:3]}, extra {extra[:3]})")
    return PlueckerVector(shell.ground, d, [seen[s] for s in want])


def _point_to_jsonable(pt: Point):
    return [rat_to_str(c) for c in pt]


def _point_sniff(obj) -> bool:
    return (isinstance(obj, list) and len(obj) > 0
            and all(isinstance(x, str) for x in obj))


def _point_parse(obj) -> Point:
    return Point([rat_from_str(x) for x in obj])


register_codec(PlueckerVector, _plucker_to_jsonable, _plucker_sniff, _plucker_parse)
register_codec(Point, _point_to_jsonable, _point_sniff, _point_parse)
