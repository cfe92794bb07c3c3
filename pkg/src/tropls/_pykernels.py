"""Pure-Python reference kernels.

Four hot loops with integer-only interfaces, mirrored exactly by the
optional compiled extension: basis-exchange checking, rank-d matroid
enumeration by brute force, lower-hull facet extraction for lifted
hypersimplex vertices, and the four-term minimum relations.

All subset indexing is colex over enumerate_subsets(n, d); a "family
mask" is an integer whose bit i says subset index i belongs to the
family.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .core import enumerate_subsets, subset_to_bits

BACKEND_NAME = "python"


def exchange_witness(masks: Sequence[int], n: int) -> Optional[tuple[int, int, int]]:
    """First failure of basis exchange over a family of same-size sets.

    Returns (B1, B2, x) in ascending scan order where no y in B2 \\ B1
    makes B1 - x + y a member, or None when the family is the basis
    set of a matroid.  Family must be nonempty, members of equal
    popcount (callers guarantee both).
    """
    fam = set(masks)
    ordered = sorted(fam)
    for b1 in ordered:
        for b2 in ordered:
            only1 = b1 & ~b2
            if not only1:
                continue
            only2 = b2 & ~b1
            rest = only1
            while rest:
                xbit = rest & -rest
                rest ^= xbit
                removed = b1 ^ xbit
                swap = only2
                ok = False
                while swap:
                    ybit = swap & -swap
                    swap ^= ybit
                    if (removed | ybit) in fam:
                        ok = True
                        break
                if not ok:
                    return (b1, b2, xbit.bit_length() - 1)
    return None


def matroid_catalog(n: int, d: int) -> list[int]:
    """Family masks of every rank-d matroid on n elements, ascending.

    Brute force over all nonempty families of d-subsets; sizes with
    comb(n, d) beyond ~22 are not practical here.
    """
    subsets = enumerate_subsets(n, d)
    m = len(subsets)
    masks = [subset_to_bits(s) for s in subsets]
    out = []
    for fam_mask in range(1, 1 << m):
        members = [masks[i] for i in range(m) if fam_mask >> i & 1]
        if exchange_witness(members, n) is None:
            out.append(fam_mask)
    return out


def lower_hull_facets(n: int, d: int, scaled: Sequence[int]) -> list[int]:
    """Facet cells of the regular subdivision induced by integer heights.

    Points are the 0/1 indicator vectors of the d-subsets of n (colex
    order), lifted by scaled[i].  A facet is reported as the family
    mask of the points lying on a supporting affine function that is
    tight on an affinely independent n-subset and nowhere above the
    lift.  Result is deduplicated and ascending.
    """
    from itertools import combinations

    subsets = enumerate_subsets(n, d)
    m = len(subsets)
    if m == 1:
        return [1]
    # coordinates: first n-1 indicator entries plus constant term
    # (every point satisfies sum = d, so the last coordinate is redundant)
    pts = []
    for s in subsets:
        bits = subset_to_bits(s)
        pts.append([(bits >> j) & 1 for j in range(n - 1)] + [1])
    found = set()
    for cand in combinations(range(m), n):
        rows = [pts[i] + [scaled[i]] for i in cand]
        sol = _solve_fraction(rows, n)
        if sol is None:
            continue
        fam = 0
        good = True
        for i in range(m):
            s = scaled[i] - sum(sol[j] * pts[i][j] for j in range(n) if pts[i][j])
            if s < 0:
                good = False
                break
            if s == 0:
                fam |= 1 << i
        if good:
            found.add(fam)
    return sorted(found)


def _solve_fraction(rows: list[list], size: int) -> Optional[list[Fraction]]:
    """Gaussian elimination on an augmented size x (size+1) system."""
    A = [[Fraction(x) for x in row] for row in rows]
    for k in range(size):
        piv = next((r for r in range(k, size) if A[r][k] != 0), None)
        if piv is None:
            return None
        A[k], A[piv] = A[piv], A[k]
        inv = 1 / A[k][k]
        A[k] = [x * inv for x in A[k]]
        for i in range(size):
            if i != k and A[i][k]:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return [A[i][size] for i in range(size)]


def validate_relations(n: int, d: int, scaled: Sequence[int]) -> Optional[tuple[int, int]]:
    """First violated four-term minimum relation, or None.

    Scans supports S in colex order, then quadruples over the
    complement in colex order; returns (S_bits, quad_bits) when the
    minimum of the three pair sums is attained only once.
    """
    if d < 2 or n - d < 2:
        return None
    index = {}
    for i, s in enumerate(enumerate_subsets(n, d)):
        index[subset_to_bits(s)] = i
    quads_pool = enumerate_subsets(n, 4)
    for s in enumerate_subsets(n, d - 2):
        sbits = subset_to_bits(s)
        for quad in quads_pool:
            qbits = subset_to_bits(quad)
            if qbits & sbits:
                continue
            bi, bj, bk, bl = (1 << (e - 1) for e in quad)
            a = scaled[index[sbits | bi | bj]] + scaled[index[sbits | bk | bl]]
            b = scaled[index[sbits | bi | bk]] + scaled[index[sbits | bj | bl]]
            c = scaled[index[sbits | bi | bl]] + scaled[index[sbits | bj | bk]]
            lo = min(a, b, c)
            if (a == lo) + (b == lo) + (c == lo) < 2:
                return (sbits, qbits)
    return None
