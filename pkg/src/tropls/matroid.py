"""Matroids by explicit basis lists.

Ground elements are positive integer labels; sets of labels are held
as bitmasks with bit e-1 standing for label e.  A matroid remembers
its ground set explicitly, so minors and restrictions keep their
original labels and parallel-connection assembly can glue matroids
whose grounds overlap in single elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from . import kernels
from .core import (
    DegenerateMinorError,
    InvalidArgumentError,
    RankExcessError,
    Subset,
    register_codec,
)


def labels_to_mask(labels: Iterable[int]) -> int:
    mask = 0
    for e in labels:
        if not isinstance(e, int) or e < 1:
            raise InvalidArgumentError(f"ground labels must be positive integers, got {e!r}")
        bit = 1 << (e - 1)
        if mask & bit:
            raise InvalidArgumentError(f"repeated label {e}")
        mask |= bit
    return mask


def mask_to_labels(mask: int) -> Subset:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length())
        mask ^= bit
    return tuple(out)


def submasks(mask: int):
    """All submasks of mask, descending, ending with 0."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


class Matroid:
    """Immutable matroid given by its ground mask, rank, and basis masks."""

    __slots__ = ("ground", "rank", "bases")

    def __init__(self, ground: int, rank: int, bases: tuple):
        self.ground = ground
        self.rank = rank
        self.bases = bases

    @property
    def n(self) -> int:
        return self.ground.bit_count()

    @property
    def elements(self) -> Subset:
        return mask_to_labels(self.ground)

    def bases_sets(self) -> list:
        return [mask_to_labels(b) for b in self.bases]

    def basis_mask_set(self) -> frozenset:
        return frozenset(self.bases)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matroid) and self.ground == other.ground
                and self.rank == other.rank and self.bases == other.bases)

    def __hash__(self) -> int:
        return hash((self.ground, self.rank, self.bases))

    def __repr__(self) -> str:
        shown = ",".join("".join(map(str, b)) if max(b, default=0) < 10 else str(b)
                         for b in self.bases_sets()[:8])
        more = "..." if len(self.bases) > 8 else ""
        return f"Matroid(ground={self.elements}, rank={self.rank}, bases=[{shown}{more}])"


def check_matroid(n: int, bases: Sequence[Iterable[int]]) -> Optional[tuple]:
    """None if the family satisfies basis exchange, else (B1, B2, x).

    B1, B2 come back as label tuples and x as the label in B1 \\ B2
    admitting no exchange; scan order is ascending bitmask.
    """
    masks = [labels_to_mask(b) for b in bases]
    if not masks:
        raise InvalidArgumentError("a matroid needs at least one basis")
    full = (1 << n) - 1
    sizes = {m.bit_count() for m in masks}
    if len(sizes) != 1:
        raise InvalidArgumentError("bases must all have the same size")
    for m in masks:
        if m & ~full:
            raise InvalidArgumentError("basis element outside 1..n")
    hit = kernels.exchange_witness(masks, n)
    if hit is None:
        return None
    b1, b2, xbit = hit
    return (mask_to_labels(b1), mask_to_labels(b2), xbit + 1)


def from_bases(ground, bases: Sequence[Iterable[int]]) -> Matroid:
    """Build and validate a matroid.

    ground is either an integer n (for ground set 1..n) or an iterable
    of labels; bases is a nonempty collection of equal-size label sets.
    """
    gmask = labels_to_mask(range(1, ground + 1)) if isinstance(ground, int) else labels_to_mask(ground)
    masks = sorted({labels_to_mask(b) for b in bases})
    if not masks:
        raise InvalidArgumentError("a matroid needs at least one basis")
    sizes = {m.bit_count() for m in masks}
    if len(sizes) != 1:
        raise InvalidArgumentError("bases must all have the same size")
    for m in masks:
        if m & ~gmask:
            raise InvalidArgumentError("basis element outside the ground set")
    hit = kernels.exchange_witness(masks, gmask.bit_length())
    if hit is not None:
        b1, b2, xbit = hit
        raise InvalidArgumentError(
            f"basis exchange fails: B1={mask_to_labels(b1)}, B2={mask_to_labels(b2)}, x={xbit + 1}")
    return Matroid(gmask, sizes.pop(), tuple(masks))


def _from_masks(gmask: int, bases_masks: Iterable[int], validate: bool = True) -> Matroid:
    masks = sorted(set(bases_masks))
    if not masks:
        raise InvalidArgumentError("a matroid needs at least one basis")
    rank = masks[0].bit_count()
    if validate:
        hit = kernels.exchange_witness(masks, gmask.bit_length())
        if hit is not None:
            raise AssertionError(f"exchange failure in a derived matroid: {hit}")
    return Matroid(gmask, rank, tuple(masks))


def uniform(d: int, n: int) -> Matroid:
    if not 0 <= d <= n:
        raise InvalidArgumentError("uniform matroid needs 0 <= d <= n")
    full = range(1, n + 1)
    return _from_masks((1 << n) - 1 if n else 0,
                       [labels_to_mask(c) for c in combinations(full, d)],
                       validate=False)


def rank_of(M: Matroid, Y: Iterable[int]) -> int:
    ymask = labels_to_mask(Y)
    if ymask & ~M.ground:
        raise InvalidArgumentError("subset outside the ground set")
    return _rank_mask(M, ymask)


def _rank_mask(M: Matroid, ymask: int) -> int:
    return max((b & ymask).bit_count() for b in M.bases)


def loops_coloops(M: Matroid) -> tuple:
    union = 0
    inter = M.ground
    for b in M.bases:
        union |= b
        inter &= b
    return (mask_to_labels(M.ground & ~union), mask_to_labels(inter))


def is_loop_free(M: Matroid) -> bool:
    union = 0
    for b in M.bases:
        union |= b
    return union == M.ground


def dual(M: Matroid) -> Matroid:
    return _from_masks(M.ground, [M.ground & ~b for b in M.bases], validate=False)


def restrict(M: Matroid, Q: Iterable[int]) -> Matroid:
    """M restricted to Q: maximal intersections of bases with Q."""
    qmask = labels_to_mask(Q)
    if qmask & ~M.ground:
        raise InvalidArgumentError("subset outside the ground set")
    r = _rank_mask(M, qmask)
    return _from_masks(qmask, [b & qmask for b in M.bases
                               if (b & qmask).bit_count() == r], validate=False)


def contract_set(M: Matroid, T: Iterable[int]) -> Matroid:
    """M with T contracted (T may be dependent): bases are B \\ T over
    bases meeting T in a maximal independent subset."""
    tmask = labels_to_mask(T)
    if tmask & ~M.ground:
        raise InvalidArgumentError("subset outside the ground set")
    r = _rank_mask(M, tmask)
    return _from_masks(M.ground & ~tmask,
                       [b & ~tmask for b in M.bases if (b & tmask).bit_count() == r],
                       validate=False)


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    if M1.ground & M2.ground:
        raise InvalidArgumentError("direct sum needs disjoint grounds")
    return _from_masks(M1.ground | M2.ground,
                       [b1 | b2 for b1 in M1.bases for b2 in M2.bases],
                       validate=False)


def minor(M: Matroid, delete: Iterable[int], contract: Iterable[int]) -> Matroid:
    """Strict minor: delete must stay spanning-compatible and contract
    must be independent; bases are the B \\ contract over bases that
    contain contract and avoid delete."""
    dmask = labels_to_mask(delete)
    cmask = labels_to_mask(contract)
    if dmask & cmask:
        raise InvalidArgumentError("delete and contract must be disjoint")
    if (dmask | cmask) & ~M.ground:
        raise InvalidArgumentError("subset outside the ground set")
    if _rank_mask(M, cmask) != cmask.bit_count():
        raise InvalidArgumentError("contract set is dependent")
    kept = [b & ~cmask for b in M.bases if (b & cmask) == cmask and not (b & dmask)]
    if not kept:
        raise DegenerateMinorError(
            f"minor (delete={mask_to_labels(dmask)}, contract={mask_to_labels(cmask)}) has no bases")
    out = _from_masks(M.ground & ~(dmask | cmask), kept)
    return out


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def connected_components(M: Matroid) -> list:
    """Finest partition of the ground into connected parts, with the
    component matroids; the basis set is the product over components.

    Two elements share a component exactly when some single basis
    exchange swaps one for the other; loops and coloops split off as
    singletons.
    """
    labels = M.elements
    dsu = _DSU(labels)
    basis_set = set(M.bases)
    for b in M.bases:
        inside = b
        while inside:
            xbit = inside & -inside
            inside ^= xbit
            outside = M.ground & ~b
            while outside:
                ybit = outside & -outside
                outside ^= ybit
                if (b ^ xbit) | ybit in basis_set:
                    dsu.union(xbit.bit_length(), ybit.bit_length())
    blocks = {}
    for e in labels:
        blocks.setdefault(dsu.find(e), []).append(e)
    parts = sorted(blocks.values(), key=lambda blk: blk[0])
    return [(tuple(blk), restrict(M, blk)) for blk in parts]


def is_connected(M: Matroid) -> bool:
    return len(connected_components(M)) == 1


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Components of two matroids joined by one edge per ground element.

    left and right hold the component ground masks; each edge is
    (left_index, right_index, element_label).
    """
    left: tuple
    right: tuple
    edges: tuple

    def collapse_simple(self) -> "BipartiteMultigraph":
        seen = {}
        for li, ri, e in self.edges:
            seen.setdefault((li, ri), e)
        kept = tuple((li, ri, e) for (li, ri), e in sorted(seen.items()))
        return BipartiteMultigraph(self.left, self.right, kept)


def component_graph(M: Matroid, M2: Matroid) -> BipartiteMultigraph:
    """The bipartite multigraph pairing the components of two loop-free
    matroids on the same ground set, one edge per ground element."""
    if M.ground != M2.ground:
        raise InvalidArgumentError("matroids must share a ground set")
    if not is_loop_free(M) or not is_loop_free(M2):
        raise InvalidArgumentError("component pairing needs loop-free matroids")
    left = [blk for blk, _ in connected_components(M)]
    right = [blk for blk, _ in connected_components(M2)]
    where_l = {}
    for i, blk in enumerate(left):
        for e in blk:
            where_l[e] = i
    where_r = {}
    for i, blk in enumerate(right):
        for e in blk:
            where_r[e] = i
    edges = tuple((where_l[e], where_r[e], e) for e in mask_to_labels(M.ground))
    return BipartiteMultigraph(tuple(labels_to_mask(b) for b in left),
                               tuple(labels_to_mask(b) for b in right), edges)


def is_transverse(M: Matroid, M2: Matroid) -> tuple:
    """(True, None) when the component graph is a simple forest, else
    (False, ("multi-edge", (e1, e2))) or (False, ("cycle", labels))."""
    g = component_graph(M, M2)
    seen = {}
    nl = len(g.left)
    dsu = _DSU(range(nl + len(g.right)))
    adj = {}
    for li, ri, e in g.edges:
        if (li, ri) in seen:
            return (False, ("multi-edge", (seen[(li, ri)], e)))
        seen[(li, ri)] = e
        u, v = li, nl + ri
        if dsu.find(u) == dsu.find(v):
            path = _forest_path(adj, u, v)
            return (False, ("cycle", tuple(path + [e])))
        dsu.union(u, v)
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    return (True, None)


def _forest_path(adj: dict, u: int, v: int) -> list:
    # BFS through accepted edges; returns the edge labels from u to v
    frontier = [(u, [])]
    visited = {u}
    while frontier:
        node, path = frontier.pop(0)
        if node == v:
            return path
        for nxt, label in adj.get(node, ()):
            if nxt not in visited:
                visited.add(nxt)
                frontier.append((nxt, path + [label]))
    raise AssertionError("endpoints not connected in the accepted forest")


def matroid_intersection(M: Matroid, M2: Matroid) -> Matroid:
    """Bases are the intersections B cap B' over covering basis pairs
    (B union B' = ground); raises RankExcessError when no pair covers."""
    if M.ground != M2.ground:
        raise InvalidArgumentError("matroids must share a ground set")
    if not is_loop_free(M) or not is_loop_free(M2):
        raise InvalidArgumentError("intersection needs loop-free matroids")
    n = M.n
    if M.rank + M2.rank < n:
        raise InvalidArgumentError("ranks too small: need d + d' >= n")
    out = set()
    for b1 in M.bases:
        for b2 in M2.bases:
            if (b1 | b2) == M.ground:
                out.add(b1 & b2)
    if not out:
        raise RankExcessError("no covering basis pair: intersection rank exceeds d + d' - n")
    return _from_masks(M.ground, out)


_ASSEMBLY_TUPLE_CAP = 2_000_000


def parallel_connection_assembly(edges: Sequence[tuple], components: Sequence[Matroid]) -> Matroid:
    """Glue matroids along a forest whose edges are single shared
    ground elements; non-adjacent grounds must be disjoint.

    A subset U of the union ground is a basis exactly when some choice
    of per-vertex bases B(v) puts every shared element e of edge (v,w)
    in B(v) or B(w), with e in U iff it is in both, and every unshared
    element of vertex v in U iff it is in B(v).
    """
    k = len(components)
    if k == 0:
        raise InvalidArgumentError("assembly needs at least one component")
    dsu = _DSU(range(k))
    shared: dict = {}
    adjacent = set()
    for v, w in edges:
        if not (0 <= v < k and 0 <= w < k) or v == w:
            raise InvalidArgumentError("forest edge endpoints must be distinct vertex indices")
        if not dsu.union(v, w):
            raise InvalidArgumentError("edges contain a cycle; a forest is required")
        inter = components[v].ground & components[w].ground
        if inter.bit_count() != 1:
            raise InvalidArgumentError("adjacent grounds must share exactly one element")
        shared[inter] = tuple(sorted((v, w)))
        adjacent.add(tuple(sorted((v, w))))
    for v in range(k):
        for w in range(v + 1, k):
            if (v, w) in adjacent:
                continue
            if components[v].ground & components[w].ground:
                raise InvalidArgumentError("non-adjacent grounds must be disjoint")
    total = 1
    for c in components:
        total *= len(c.bases)
        if total > _ASSEMBLY_TUPLE_CAP:
            raise InvalidArgumentError("assembly basis enumeration too large")
    union_ground = 0
    for c in components:
        union_ground |= c.ground
    shared_bits = 0
    for bit in shared:
        shared_bits |= bit
    out = set()
    for choice in product(*[c.bases for c in components]):
        u = 0
        ok = True
        for ebit, (v, w) in shared.items():
            inb1 = bool(choice[v] & ebit)
            inb2 = bool(choice[w] & ebit)
            if not (inb1 or inb2):
                ok = False
                break
            if inb1 and inb2:
                u |= ebit
        if not ok:
            continue
        for v in range(k):
            u |= choice[v] & ~shared_bits
        out.add(u)
    if not out:
        raise InvalidArgumentError("assembly produced no bases")
    result = _from_masks(union_ground, out, validate=False)
    hit = kernels.exchange_witness(result.bases, union_ground.bit_length())
    if hit is not None:
        raise InvalidArgumentError("assembly inputs are not compatible: exchange fails")
    return result


def perfect_matching_census(G: BipartiteMultigraph) -> tuple:
    """(number of perfect matchings, same after collapsing parallel
    edges), by memoized exhaustive recursion."""
    def count(graph: BipartiteMultigraph) -> int:
        nl, nr = len(graph.left), len(graph.right)
        if nl != nr:
            return 0
        incident = [[] for _ in range(nl)]
        for li, ri, _ in graph.edges:
            incident[li].append(ri)
        from functools import lru_cache

        @lru_cache(maxsize=None)
        def rec(i: int, used: int) -> int:
            if i == nl:
                return 1
            total = 0
            for ri in incident[i]:
                if not used >> ri & 1:
                    total += rec(i + 1, used | (1 << ri))
            return total

        return rec(0, 0)

    return (count(G), count(G.collapse_simple()))


def flats(M: Matroid) -> list:
    """All rank-closed subsets of the ground, sorted."""
    out = []
    for y in submasks(M.ground):
        ry = _rank_mask(M, y)
        closed = True
        rest = M.ground & ~y
        while rest:
            xbit = rest & -rest
            rest ^= xbit
            if _rank_mask(M, y | xbit) == ry:
                closed = False
                break
        if closed:
            out.append(y)
    return sorted(mask_to_labels(y) for y in out)


def good_flats(M: Matroid) -> list:
    """Proper nonempty flats Q with both the restriction to Q and the
    contraction of Q connected; M itself must be connected."""
    if not is_connected(M):
        raise InvalidArgumentError("good flats are defined for connected matroids")
    out = []
    for q in flats(M):
        qmask = labels_to_mask(q)
        if qmask == 0 or qmask == M.ground:
            continue
        if is_connected(restrict(M, q)) and is_connected(contract_set(M, q)):
            out.append(q)
    return out


def chain_length(M: Matroid, f: int, g: int) -> int:
    """Number of good flats containing element f but not element g."""
    count = 0
    for q in good_flats(M):
        if f in q and g not in q:
            count += 1
    return count


def graphical_matroid(edges: Sequence[tuple]) -> Matroid:
    """Matroid of spanning trees of a connected multigraph.

    edges is a sequence of vertex pairs; ground label i+1 stands for
    edges[i].  Exhaustive over edge subsets of tree size.
    """
    if not edges:
        raise InvalidArgumentError("need at least one edge")
    verts = sorted({v for e in edges for v in e})
    dsu = _DSU(verts)
    for u, v in edges:
        dsu.union(u, v)
    if len({dsu.find(v) for v in verts}) != 1:
        raise InvalidArgumentError("graph must be connected")
    tree_size = len(verts) - 1
    bases = []
    for cand in combinations(range(len(edges)), tree_size):
        d2 = _DSU(verts)
        acyclic = True
        for i in cand:
            u, v = edges[i]
            if not d2.union(u, v):
                acyclic = False
                break
        if acyclic:
            bases.append(labels_to_mask(i + 1 for i in cand))
    return _from_masks((1 << len(edges)) - 1, bases, validate=False)


def _matroid_to_jsonable(M: Matroid):
    body = {"rank": M.rank, "bases": [list(b) for b in M.bases_sets()]}
    if M.ground == (1 << M.n) - 1:
        return {"n": M.n, **body}
    return {"ground": list(M.elements), **body}


def _matroid_sniff(obj) -> bool:
    return isinstance(obj, dict) and "rank" in obj and "bases" in obj and ("n" in obj or "ground" in obj)


def _matroid_parse(obj) -> Matroid:
    ground = obj["n"] if "n" in obj else [int(e) for e in obj["ground"]]
    return from_bases(ground, [tuple(int(e) for e in b) for b in obj["bases"]])


register_codec(Matroid, _matroid_to_jsonable, _matroid_sniff, _matroid_parse)
