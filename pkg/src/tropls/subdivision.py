"""Materialization of the regular matroidal subdivision of a valid
tropical Pluecker vector: facet cells, dual vertices, interior faces,
bounded and total face counts, and transversality certificates.

Geometry conventions: a cell is the argmin family of p_I minus the
w-weight of I for some w; its polytope dimension is the ground size
minus the number of matroid components (loops and coloops count as
singleton components).  A cell is interior exactly when its matroid is
loop-free and coloop-free; facet cells are the connected ones, and
their dual cells are single points once the last coordinate is pinned
to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from ._linalg import AffineSystem, matrix_rank, strict_solution
from .core import InvalidArgumentError, Subset
from .matroid import (
    Matroid,
    component_graph,
    connected_components,
    good_flats,
    is_transverse,
    labels_to_mask,
    loops_coloops,
    mask_to_labels,
    matroid_intersection,
)
from .plucker import PlueckerVector, Point, _argmin_masks, minor, validate


@dataclass(frozen=True)
class Cell:
    """One cell of the subdivision: its matroid, polytope dimension,
    component count, and whether it avoids the hypersimplex boundary."""
    matroid: Matroid
    dim: int
    components: int
    interior: bool

    def basis_key(self) -> tuple:
        return self.matroid.bases


def _mask_coords(mask: int, ground: Sequence[int]) -> list:
    return [(mask >> (e - 1)) & 1 for e in ground]


def _make_cell(p: PlueckerVector, bases_masks: Sequence[int]) -> Cell:
    masks = tuple(sorted(set(bases_masks)))
    M = Matroid(p.ground_mask(), masks[0].bit_count(), masks)
    parts = connected_components(M)
    c = len(parts)
    base0 = _mask_coords(masks[0], p.ground)
    diffs = [[b - a for a, b in zip(base0, _mask_coords(m, p.ground))] for m in masks[1:]]
    dim = matrix_rank(diffs)
    if dim != p.n - c:
        raise AssertionError("cell dimension must equal ground size minus component count")
    loops, coloops = loops_coloops(M)
    return Cell(M, dim, c, not loops and not coloops)


def _cell_values(p: PlueckerVector, w: Sequence) -> tuple:
    """(values aligned with subset masks, minimum, argmin masks)."""
    wmap = [Fraction(x) for x in w]
    vals = []
    masks = p.subset_masks()
    for s, v in zip(p.subsets(), p.values):
        acc = v
        for e in s:
            acc -= wmap[p.ground.index(e)]
        vals.append(acc)
    lo = min(vals)
    arg = [m for m, v in zip(masks, vals) if v == lo]
    return vals, lo, arg


def _weight_rate(mask: int, u_by_label: dict) -> Fraction:
    acc = Fraction(0)
    for e, coeff in u_by_label.items():
        if mask >> (e - 1) & 1:
            acc += coeff
    return acc


def _crossing(p: PlueckerVector, w: list, u_by_label: dict, family: Sequence[int]) -> Optional[tuple]:
    """First breakpoint along w + t * u, t > 0.

    For small positive t the argmin is the max-rate subfamily of the
    current one (values drop at their weight rate); returns (t, new
    point) for the least t at which some faster outside subset ties,
    or None if none ever does.
    """
    vals, lo, _ = _cell_values(p, w)
    fam = set(family)
    rate_max = max(_weight_rate(m, u_by_label) for m in family)
    best: Optional[Fraction] = None
    masks = p.subset_masks()
    for m, v in zip(masks, vals):
        if m in fam:
            continue
        gain = _weight_rate(m, u_by_label) - rate_max
        if gain <= 0:
            continue
        t = (v - lo) / gain
        if best is None or t < best:
            best = t
    if best is None:
        return None
    new_w = list(w)
    for e, coeff in u_by_label.items():
        new_w[p.ground.index(e)] += best * coeff
    return best, new_w


def _start_facet(p: PlueckerVector) -> tuple:
    """Walk from the origin to a full-dimensional cell.

    While the current argmin matroid is disconnected (counting loops
    and coloops as singleton components), move along a component
    direction to the first breakpoint; each step strictly enlarges the
    cell, so at most n steps are needed.
    """
    n = p.n
    w = [Fraction(0)] * n
    for _ in range(n + 2):
        _, _, arg = _cell_values(p, w)
        M = Matroid(p.ground_mask(), arg[0].bit_count(), tuple(sorted(arg)))
        blocks = [blk for blk, _ in connected_components(M)]
        if len(blocks) == 1:
            return tuple(sorted(arg)), w
        moved = False
        for blk in blocks:
            for sign in (1, -1):
                u = {e: Fraction(sign) for e in blk}
                hit = _crossing(p, w, u, arg)
                if hit is not None:
                    w = hit[1]
                    moved = True
                    break
            if moved:
                break
        if not moved:
            raise AssertionError("disconnected cell with no breakpoint in any component direction")
    raise AssertionError("cell walk failed to reach a full-dimensional cell")


_GOOD_FLATS_CACHE: dict = {}


def _good_flats_cached(M: Matroid) -> list:
    hit = _GOOD_FLATS_CACHE.get(M)
    if hit is None:
        hit = good_flats(M)
        _GOOD_FLATS_CACHE[M] = hit
    return hit


def _dual_vertex_system(p: PlueckerVector, bases: Sequence[int]) -> Optional[list]:
    n = p.n
    sys = AffineSystem(n)
    base0 = _mask_coords(bases[0], p.ground)
    v0 = p.values[p.subset_masks().index(bases[0])]
    lookup = dict(zip(p.subset_masks(), p.values))
    for m in bases[1:]:
        coords = _mask_coords(m, p.ground)
        row = [b - a for a, b in zip(base0, coords)]
        if not sys.add_equation(row, lookup[m] - v0):
            return None
    pin = [Fraction(0)] * n
    pin[n - 1] = Fraction(1)
    if not sys.add_equation(pin, 0):
        return None
    return sys.solve_unique()


def dual_vertex(p: PlueckerVector, M: Matroid) -> Point:
    """The unique point (last coordinate zero) whose weight ties all
    bases of M at the strict minimum; M must be a facet cell."""
    if M.ground != p.ground_mask() or M.rank != p.d:
        raise InvalidArgumentError("matroid does not match the vector's ground and rank")
    sol = _dual_vertex_system(p, M.bases)
    if sol is None:
        raise InvalidArgumentError("not a facet cell: tie system has no unique solution")
    vals, lo, arg = _cell_values(p, sol)
    if tuple(sorted(arg)) != M.bases:
        raise InvalidArgumentError("not a facet cell: tie point is not strictly minimal on the bases")
    return Point(sol)


def _trivial_cell(p: PlueckerVector) -> Cell:
    return _make_cell(p, [labels_to_mask(s) for s in p.subsets()])


class Subdivision:
    """Facets, dual vertices, and interior faces of one vector."""

    def __init__(self, p: PlueckerVector):
        wit = validate(p)
        if wit is not None:
            raise InvalidArgumentError(f"not a tropical Pluecker vector: {wit}")
        self.p = p
        self._facets: list = []
        self._duals: list = []
        self._interior: Optional[list] = None
        self._build_facets()

    # -- facet enumeration ------------------------------------------------

    def _build_facets(self) -> None:
        p = self.p
        n, d = p.n, p.d
        if d == 0 or d == n or n <= 1:
            cell = _trivial_cell(p)
            self._facets = [cell]
            self._duals = [Point.zero(n)]
            return
        start, w0 = _start_facet(p)
        seen = {start}
        queue = [start]
        found = []
        while queue:
            bases = queue.pop()
            M = Matroid(p.ground_mask(), d, bases)
            wM = _dual_vertex_system(p, bases)
            if wM is None:
                raise AssertionError("facet tie system must be uniquely solvable")
            found.append((bases, Point(wM)))
            for q in _good_flats_cached(M):
                if not 2 <= len(q) <= n - 2:
                    continue
                u = {e: Fraction(1) for e in q}
                hit = _crossing(p, list(wM), u, bases)
                if hit is None:
                    raise AssertionError("interior ridge crossing must have a finite breakpoint")
                _, w_new = hit
                _, _, arg = _cell_values(p, w_new)
                neighbor = tuple(sorted(arg))
                if neighbor not in seen:
                    seen.add(neighbor)
                    queue.append(neighbor)
        found.sort(key=lambda fw: fw[0])
        self._facets = []
        self._duals = []
        for bases, pt in found:
            cell = _make_cell(p, bases)
            if cell.components != 1:
                raise AssertionError("facet cells must be connected")
            self._facets.append(cell)
            self._duals.append(pt)

    # -- interior faces ----------------------------------------------------

    def facet_cells(self) -> list:
        return list(self._facets)

    def dual_vertex_points(self) -> list:
        return list(self._duals)

    def interior_cells(self) -> list:
        if self._interior is None:
            families = {cell.matroid.bases for cell in self._facets}
            frontier = set(families)
            while frontier:
                fresh = set()
                for a in frontier:
                    sa = set(a)
                    for b in families:
                        inter = tuple(sorted(sa & set(b)))
                        if inter and inter not in families and inter not in fresh:
                            fresh.add(inter)
                families |= fresh
                frontier = fresh
            cells = []
            for fam in families:
                cell = _make_cell(self.p, fam)
                if cell.interior:
                    cells.append(cell)
            cells.sort(key=lambda c: (-c.dim, c.matroid.bases))
            self._interior = cells
        return list(self._interior)

    def containment_pairs(self) -> list:
        """(i, j) index pairs over interior_cells with cell i a proper
        face of cell j."""
        cells = self.interior_cells()
        out = []
        for i, a in enumerate(cells):
            sa = set(a.matroid.bases)
            for j, b in enumerate(cells):
                if i != j and sa < set(b.matroid.bases):
                    out.append((i, j))
        return out

    def bounded_f_vector(self) -> tuple:
        n, d = self.p.n, self.p.d
        top = min(d, n - d)
        counts = [0] * (top + 1)
        for cell in self.interior_cells():
            if cell.components > top:
                raise AssertionError("interior cell with too many components")
            counts[cell.components] += 1
        return tuple(counts[1:])

    def to_jsonable(self) -> dict:
        from .core import to_jsonable as enc

        return {
            "facets": [enc(c.matroid) for c in self._facets],
            "interior": [
                {"matroid": enc(c.matroid), "dim": c.dim, "components": c.components}
                for c in self.interior_cells()
            ],
            "f_bounded": list(self.bounded_f_vector()),
            "dual_vertices": {
                str(i): enc(pt) for i, pt in enumerate(self._duals)
            },
        }


@lru_cache(maxsize=512)
def _subdivision_of(p: PlueckerVector) -> Subdivision:
    return Subdivision(p)


def subdivision_of(p: PlueckerVector) -> Subdivision:
    return _subdivision_of(p)


def facets(p: PlueckerVector) -> list:
    return subdivision_of(p).facet_cells()


def interior_faces(p: PlueckerVector) -> list:
    return subdivision_of(p).interior_cells()


def bounded_f_vector(p: PlueckerVector) -> tuple:
    return subdivision_of(p).bounded_f_vector()


@lru_cache(maxsize=256)
def _loop_free_cells(p: PlueckerVector) -> tuple:
    out = []
    gm = p.ground_mask()
    for lam_size in range(0, p.d + 1):
        for lam in combinations(p.ground, lam_size):
            if lam_size == p.d:
                continue  # rank-0 remainder: every leftover element is a loop
            q = minor(p, (), lam) if lam else p
            lam_mask = labels_to_mask(lam)
            for cell in subdivision_of(q).interior_cells():
                bases = tuple(sorted(b | lam_mask for b in cell.matroid.bases))
                M = Matroid(gm, p.d, bases)
                out.append((M, cell.components + lam_size))
    out.sort(key=lambda mc: (mc[1], mc[0].bases))
    return tuple(out)


def loop_free_cells(p: PlueckerVector) -> list:
    """All loop-free cells as (matroid, component count) pairs, by the
    coloop recursion: a loop-free cell splits into its coloop set and
    an interior cell of the corresponding contraction minor."""
    return list(_loop_free_cells(p))


def loop_free_face_count(p: PlueckerVector) -> tuple:
    """g[i] = number of loop-free cells with i components, i = 1..d."""
    g = [0] * (p.d + 1)
    for _, c in loop_free_cells(p):
        g[c] += 1
    return tuple(g[1:])


# -- stable intersection checks ---------------------------------------------


def check_stable_cells(q: PlueckerVector, p: PlueckerVector, p2: PlueckerVector) -> bool:
    """Every facet cell of the subdivision of q must be the matroid
    intersection of the cells of p and p2 at the facet's dual point.

    A rank-zero q is a resultant scalar whose point subdivision pins
    nothing down; there the check becomes: wherever loop-free dual
    faces of the factors meet, the matroid intersection must be the
    trivial rank-zero matroid.  Factors whose spaces never meet pass
    vacuously.
    """
    from .core import RankExcessError
    from .plucker import stable_intersection

    if q != stable_intersection(p, p2):
        raise InvalidArgumentError("q is not the stable intersection of the given pair")
    if q.d == 0:
        trivial = Matroid(p.ground_mask(), 0, (0,))
        side1 = [(M, _dual_face_system(p, M)) for M, _c in loop_free_cells(p)]
        side2 = [(M2, _dual_face_system(p2, M2)) for M2, _c in loop_free_cells(p2)]
        for M, (s1, eqs1, in1) in side1:
            for M2, (s2, eqs2, in2) in side2:
                if not s1.merged_with(s2).consistent:
                    continue
                if strict_solution(q.n, eqs1 + eqs2, in1 + in2) is None:
                    continue
                try:
                    if matroid_intersection(M, M2) != trivial:
                        return False
                except (RankExcessError, InvalidArgumentError):
                    return False
        return True
    sub = subdivision_of(q)
    points = sub.dual_vertex_points()
    for cell, w in zip(sub.facet_cells(), points):
        _, _, arg1 = _cell_values(p, w)
        _, _, arg2 = _cell_values(p2, w)
        M = Matroid(p.ground_mask(), p.d, tuple(sorted(arg1)))
        M2 = Matroid(p2.ground_mask(), p2.d, tuple(sorted(arg2)))
        try:
            if matroid_intersection(M, M2) != cell.matroid:
                return False
        except (RankExcessError, InvalidArgumentError):
            return False
    return True


def _dual_face_system(p: PlueckerVector, M: Matroid):
    """The closed dual face of M, with the cell minimum eliminated by
    pinning everything against the first basis B0: equalities
    (e_B0 - e_B).w = p_B - p_B0 and strict rows (e_J - e_B0).w < p_J - p_B0
    whose joint solutions form the face's relative interior."""
    n = p.n
    bases = set(M.bases)
    b0 = M.bases[0]
    vals = dict(zip(p.subset_masks(), p.values))
    v0 = vals[b0]
    row0 = [Fraction(1) if b0 >> (e - 1) & 1 else Fraction(0) for e in p.ground]
    eqs = []
    ineqs = []
    sys = AffineSystem(n)
    for mask, val in vals.items():
        if mask == b0:
            continue
        row = [Fraction(1) if mask >> (e - 1) & 1 else Fraction(0) for e in p.ground]
        if mask in bases:
            eq = ([a - b for a, b in zip(row0, row)], val - v0)
            eqs.append(eq)
            sys.add_equation(*eq)
        else:
            ineqs.append(([b - a for a, b in zip(row0, row)], val - v0))
    return sys, eqs, ineqs


def transversality_certificate(p: PlueckerVector, p2: PlueckerVector) -> tuple:
    """(ok, checked pairs, offender).

    Scans every pair of loop-free cells whose dual cells meet in
    relative interior; each such pair must have a simple-forest
    component pairing.  checked lists the pairs that intersected;
    offender is (M, M2, certificate) for the first failure.
    """
    if p.ground != p2.ground:
        raise InvalidArgumentError("vectors must share a ground set")
    n = p.n
    side1 = [(M, _dual_face_system(p, M)) for M, _c in loop_free_cells(p)]
    side2 = [(M2, _dual_face_system(p2, M2)) for M2, _c in loop_free_cells(p2)]
    checked = []
    for M, (sys1, eqs1, ineqs1) in side1:
        for M2, (sys2, eqs2, ineqs2) in side2:
            merged = sys1.merged_with(sys2)
            if not merged.consistent:
                continue
            point = strict_solution(n, eqs1 + eqs2, ineqs1 + ineqs2)
            if point is None:
                continue
            checked.append((M, M2))
            ok, cert = is_transverse(M, M2)
            if not ok:
                return (False, checked, (M, M2, cert))
    return (True, checked, None)
