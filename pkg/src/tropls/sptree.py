"""Bi-colored trivalent trees, weighted trees, forests from edge
splittings, the series-parallel matroids they define, and the bounded
and total face-count formulas.

Vertex naming: leaves are "L1", "L2", ... (the integer is the ground
label); internal vertices carry any other name.  Colors assign "black"
or "white" to internal vertices; a rank-d matroid on n leaves needs
d-1 black and n-d-1 white vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import core
from .core import InvalidArgumentError, rat_from_str, rat_to_str
from .matroid import Matroid, direct_sum, from_bases, graphical_matroid
from .tutte import is_series_parallel

BLACK = "black"
WHITE = "white"


def _leaf_label(name: str) -> Optional[int]:
    if isinstance(name, str) and len(name) > 1 and name[0] == "L" and name[1:].isdigit():
        return int(name[1:])
    return None


def _check_tree_structure(edges: Sequence[tuple]) -> dict:
    """Validate connected acyclic edges and return the adjacency map."""
    adj: dict = {}
    seen = set()
    for u, v in edges:
        if u == v:
            raise InvalidArgumentError("self-loop edge in tree")
        key = (u, v) if u <= v else (v, u)
        if key in seen:
            raise InvalidArgumentError(f"duplicate edge {key}")
        seen.add(key)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not adj:
        raise InvalidArgumentError("tree needs at least one edge")
    if len(edges) != len(adj) - 1:
        raise InvalidArgumentError("edge count must be vertex count minus one")
    stack = [next(iter(sorted(adj)))]
    reached = set(stack)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                stack.append(y)
    if len(reached) != len(adj):
        raise InvalidArgumentError("tree must be connected")
    return {v: tuple(sorted(nb)) for v, nb in adj.items()}


class ColoredTree:
    """Trivalent tree with integer-labeled leaves and optional
    black/white colors on the internal vertices."""

    __slots__ = ("edges", "colors", "_adj")

    def __init__(self, edges: Iterable[tuple], colors: Optional[dict] = None):
        edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        adj = _check_tree_structure(edges)
        leaves = {}
        internal = []
        for v, nb in adj.items():
            lab = _leaf_label(v)
            if lab is not None:
                if len(nb) != 1:
                    raise InvalidArgumentError(f"leaf name {v} with degree {len(nb)}")
                if lab in leaves.values():
                    raise InvalidArgumentError(f"repeated leaf label {lab}")
                leaves[v] = lab
            else:
                if len(nb) != 3:
                    raise InvalidArgumentError(f"internal vertex {v} must have degree 3")
                internal.append(v)
        if len(leaves) < 2:
            raise InvalidArgumentError("need at least two leaves")
        colors = dict(colors or {})
        for v, c in colors.items():
            if v not in internal:
                raise InvalidArgumentError(f"color on non-internal vertex {v}")
            if c not in (BLACK, WHITE):
                raise InvalidArgumentError(f"color must be black or white, got {c}")
        self.edges = edges
        self.colors = tuple(sorted(colors.items()))
        self._adj = adj

    # -- structure ---------------------------------------------------------

    @property
    def adjacency(self) -> dict:
        return dict(self._adj)

    def leaf_labels(self) -> tuple:
        return tuple(sorted(_leaf_label(v) for v in self._adj if _leaf_label(v) is not None))

    @property
    def n(self) -> int:
        return len(self.leaf_labels())

    def internal_vertices(self) -> tuple:
        return tuple(sorted(v for v in self._adj if _leaf_label(v) is None))

    def internal_edges(self) -> tuple:
        return tuple((u, v) for u, v in self.edges
                     if _leaf_label(u) is None and _leaf_label(v) is None)

    def color_map(self) -> dict:
        return dict(self.colors)

    def is_fully_colored(self) -> bool:
        return len(self.colors) == len(self.internal_vertices())

    def black_count(self) -> int:
        return sum(1 for _, c in self.colors if c == BLACK)

    def leaf_side(self, edge: tuple, endpoint) -> frozenset:
        """Leaf labels in the component of `endpoint` once edge is cut."""
        u, v = edge
        if endpoint not in (u, v):
            raise InvalidArgumentError("endpoint must belong to the edge")
        other = v if endpoint == u else u
        stack = [endpoint]
        reached = {other, endpoint}
        labels = []
        while stack:
            x = stack.pop()
            lab = _leaf_label(x)
            if lab is not None:
                labels.append(lab)
            for y in self._adj[x]:
                if y not in reached:
                    reached.add(y)
                    stack.append(y)
        return frozenset(labels)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ColoredTree) and self.edges == other.edges
                and self.colors == other.colors)

    def __hash__(self) -> int:
        return hash((self.edges, self.colors))

    def __repr__(self) -> str:
        cols = ",".join(f"{v}:{c[0]}" for v, c in self.colors)
        return f"ColoredTree(n={self.n}, edges={len(self.edges)}, colors=[{cols}])"


class WeightedTree:
    """Leaf-labeled tree with exact edge lengths; internal edges must
    have positive length, leaf edges may have any rational length."""

    __slots__ = ("edges", "_adj")

    def __init__(self, edges: Iterable[tuple]):
        rows = []
        for u, v, ln in edges:
            a, b = sorted((u, v))
            rows.append((a, b, Fraction(ln)))
        rows.sort()
        adj = _check_tree_structure([(u, v) for u, v, _ in rows])
        for v, nb in adj.items():
            lab = _leaf_label(v)
            if lab is None and len(nb) == 2:
                raise InvalidArgumentError(f"degree-2 vertex {v} is not allowed")
            if lab is not None and len(nb) != 1:
                raise InvalidArgumentError(f"leaf name {v} with degree {len(nb)}")
        labs = [_leaf_label(v) for v in adj if _leaf_label(v) is not None]
        if len(labs) != len(set(labs)):
            raise InvalidArgumentError("repeated leaf label")
        for u, v, ln in rows:
            if _leaf_label(u) is None and _leaf_label(v) is None and ln <= 0:
                raise InvalidArgumentError(f"internal edge ({u},{v}) needs positive length")
        self.edges = tuple(rows)
        self._adj = adj

    def leaf_count(self) -> int:
        return sum(1 for v in self._adj if _leaf_label(v) is not None)

    def leaf_labels(self) -> tuple:
        return tuple(sorted(_leaf_label(v) for v in self._adj if _leaf_label(v) is not None))

    def leaf_distance_matrix(self) -> dict:
        """{(i, j): path length} over leaf label pairs i < j."""
        length = {}
        for u, v, ln in self.edges:
            length[(u, v)] = ln
            length[(v, u)] = ln
        leaves = {v: _leaf_label(v) for v in self._adj if _leaf_label(v) is not None}
        dist = {}
        for src, lab in leaves.items():
            acc = {src: Fraction(0)}
            stack = [src]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in acc:
                        acc[y] = acc[x] + length[(x, y)]
                        stack.append(y)
            for dst, lab2 in leaves.items():
                if lab < lab2:
                    dist[(lab, lab2)] = acc[dst]
        return dist

    def __repr__(self) -> str:
        return f"WeightedTree(n={self.leaf_count()}, edges={len(self.edges)})"


def weighted_from_shape(tree: ColoredTree, internal_length=1, leaf_length=0) -> WeightedTree:
    """Equip a tree shape with lengths: leaf edges get leaf_length,
    internal edges internal_length (which must be positive)."""
    rows = []
    for u, v in tree.edges:
        internal = _leaf_label(u) is None and _leaf_label(v) is None
        rows.append((u, v, internal_length if internal else leaf_length))
    return WeightedTree(rows)


# -- the series-parallel matroid of a colored tree ---------------------------


def tree_matroid(tree: ColoredTree) -> Matroid:
    """Rank-(blacks+1) matroid on the leaf labels: a subset I is a
    basis when every edge's leaf side A_e satisfies
    a_e <= |A_e intersect I| <= a_e + 1, a_e counting the black
    vertices on that side."""
    internal = tree.internal_vertices()
    if not tree.is_fully_colored():
        raise InvalidArgumentError(
            f"need colors on all {len(internal)} internal vertices, got {len(tree.colors)}")
    labels = tree.leaf_labels()
    d = tree.black_count() + 1
    if d > len(labels) - 1:
        raise InvalidArgumentError("too many black vertices for the leaf count")
    cmap = tree.color_map()
    constraints = []
    for u, v in tree.edges:
        side = tree.leaf_side((u, v), u)
        blacks = 0
        # count black internal vertices on u's side (u included)
        other = v
        stack = [u]
        reached = {other, u}
        while stack:
            x = stack.pop()
            if cmap.get(x) == BLACK:
                blacks += 1
            for y in tree._adj[x]:
                if y not in reached:
                    reached.add(y)
                    stack.append(y)
        constraints.append((side, blacks))
    bases = []
    for I in combinations(labels, d):
        s = set(I)
        if all(a <= len(side & s) <= a + 1 for side, a in constraints):
            bases.append(I)
    if not bases:
        raise InvalidArgumentError("coloring admits no basis")
    M = from_bases(labels, bases)
    if not is_series_parallel(M):
        raise AssertionError("tree matroids must be series-parallel")
    return M


# -- forests by edge splitting -----------------------------------------------


@dataclass(frozen=True)
class ColoredForest:
    """Components from repeated internal-edge splits, leaf blocks
    partitioning the original leaf set."""
    components: tuple

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=lambda t: t.leaf_labels()))
        object.__setattr__(self, "components", comps)
        blocks = [set(t.leaf_labels()) for t in comps]
        total = sum(len(b) for b in blocks)
        if total != len(set().union(*blocks) if blocks else set()):
            raise InvalidArgumentError("component leaf sets must be disjoint")

    def leaf_blocks(self) -> tuple:
        return tuple(t.leaf_labels() for t in self.components)

    def component_count(self) -> int:
        return len(self.components)

    def black_count(self) -> int:
        return sum(t.black_count() for t in self.components)

    def internal_vertex_count(self) -> int:
        return sum(len(t.internal_vertices()) for t in self.components)

    def product_matroid(self) -> Matroid:
        out = None
        for t in self.components:
            M = tree_matroid(t)
            out = M if out is None else direct_sum(out, M)
        return out

    def shape_key(self) -> tuple:
        """Canonical key ignoring colors: per component, the leaf set
        plus its nontrivial leaf splits."""
        key = []
        for t in self.components:
            labels = t.leaf_labels()
            lo = labels[0]
            splits = set()
            for e in t.internal_edges():
                side = t.leaf_side(e, e[0])
                if lo in side:
                    side = frozenset(labels) - side
                splits.add(side)
            key.append((labels, frozenset(splits)))
        return tuple(sorted(key))


def split(obj, edge: tuple) -> ColoredForest:
    """Cut an internal edge: both endpoints are deleted and each one's
    two remaining neighbors are joined; colors are inherited."""
    if isinstance(obj, ColoredTree):
        forest = ColoredForest((obj,))
    elif isinstance(obj, ColoredForest):
        forest = obj
    else:
        raise InvalidArgumentError("split expects a tree or a forest")
    u, v = edge
    target = None
    for t in forest.components:
        if (min(u, v), max(u, v)) in t.edges:
            target = t
            break
    if target is None:
        raise InvalidArgumentError(f"edge ({u},{v}) not in the forest")
    if _leaf_label(u) is not None or _leaf_label(v) is not None:
        raise InvalidArgumentError("only internal edges can be split")
    cmap = target.color_map()
    pieces = []
    for keep, drop in ((u, v), (v, u)):
        rest = [e for e in target.edges
                if keep not in e and drop not in e]
        partners = [x for x in target._adj[keep] if x != drop]
        rest.append(tuple(sorted(partners)))
        kept_vertices = set()
        for e in rest:
            kept_vertices.update(e)
        cols = {x: c for x, c in cmap.items() if x in kept_vertices}
        # keep only this side's edges
        side_adj = _build_side(rest, partners[0])
        side_edges = [e for e in rest if e[0] in side_adj]
        pieces.append(ColoredTree(side_edges, {x: c for x, c in cols.items() if x in side_adj}))
    others = [t for t in forest.components if t is not target]
    return ColoredForest(tuple(others) + tuple(pieces))


def _build_side(edges: Sequence[tuple], start) -> set:
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    reached = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in reached:
                reached.add(y)
                stack.append(y)
    return reached


def enumerate_forests(tree: ColoredTree, i: int) -> list:
    """All i-component forests reachable by internal-edge splits; the
    count is asserted to be C(n-i-1, i-1)."""
    if i < 1:
        raise InvalidArgumentError("component count must be at least 1")
    n = tree.n
    level = {ColoredForest((tree,)).shape_key(): ColoredForest((tree,))}
    for _ in range(i - 1):
        nxt: dict = {}
        for forest in level.values():
            for t in forest.components:
                for e in t.internal_edges():
                    child = split(forest, e)
                    nxt[child.shape_key()] = child
        level = nxt
    out = sorted(level.values(), key=lambda f: f.shape_key())
    want = math.comb(n - i - 1, i - 1) if n - i - 1 >= i - 1 >= 0 else 0
    if len(out) != want:
        raise AssertionError(
            f"forest count {len(out)} differs from C({n - i - 1},{i - 1}) = {want}")
    return out


# -- the predicted face catalog ----------------------------------------------


@dataclass(frozen=True)
class CatalogFace:
    forest: ColoredForest
    matroid: Matroid
    components: int


def tree_space_face_catalog(tree: ColoredTree, d: int) -> list:
    """Predicted interior faces of the rank-d tree space: every pair
    (forest, coloring) with i components, d-i black and n-d-i white
    vertices, together with its product matroid."""
    n = tree.n
    if not 2 <= d <= n - 2:
        raise InvalidArgumentError("need 2 <= d <= n-2")
    out = []
    for i in range(1, min(d, n - d) + 1):
        for forest in enumerate_forests(tree, i):
            internals = []
            for ci, t in enumerate(forest.components):
                internals.extend((ci, v) for v in t.internal_vertices())
            for blacks in combinations(range(len(internals)), d - i):
                black_set = {internals[k] for k in blacks}
                comps = []
                for ci, t in enumerate(forest.components):
                    cols = {v: (BLACK if (ci, v) in black_set else WHITE)
                            for v in t.internal_vertices()}
                    comps.append(ColoredTree(t.edges, cols))
                colored = ColoredForest(tuple(comps))
                out.append(CatalogFace(colored, colored.product_matroid(), i))
    out.sort(key=lambda f: (f.components, f.matroid.bases))
    return out


def catalog_children(face: CatalogFace) -> list:
    """Faces one split deeper: cut an internal edge whose endpoints
    have opposite colors, colors inherited."""
    out = []
    for t in face.forest.components:
        cmap = t.color_map()
        for e in t.internal_edges():
            if cmap[e[0]] != cmap[e[1]]:
                child = split(face.forest, e)
                out.append(CatalogFace(child, child.product_matroid(),
                                       face.components + 1))
    return out


# -- the conjectured bounds --------------------------------------------------


def _comb(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def fvector_formula(i: int, d: int, n: int) -> int:
    """Conjectured maximum number of bounded faces with i components."""
    if i < 1 or i > min(d, n - d):
        return 0
    return _comb(n - 2 * i, d - i) * _comb(n - i - 1, i - 1)


def total_face_formula(i: int, d: int, n: int) -> int:
    """Proven bound on the number of loop-free faces with i components."""
    if i < 1 or i > d:
        return 0
    return _comb(n - i - 1, d - i) * _comb(2 * n - d - 1, i - 1)


# -- series/parallel graph programs ------------------------------------------


def sp_graph_build(program: Sequence[tuple]) -> Matroid:
    """Run series/parallel extension steps starting from one edge on
    two vertices; each step is ("series"|"parallel", edge_index) with
    1-based indices into the edges created so far."""
    edges = [(1, 2)]
    fresh = 3
    for step in program:
        try:
            op, idx = step
        except (TypeError, ValueError):
            raise InvalidArgumentError(f"malformed step {step!r}")
        if not isinstance(idx, int) or not 1 <= idx <= len(edges):
            raise InvalidArgumentError(f"step {step!r} names no existing edge")
        a, b = edges[idx - 1]
        if op == "parallel":
            edges.append((a, b))
        elif op == "series":
            edges[idx - 1] = (a, fresh)
            edges.append((fresh, b))
            fresh += 1
        else:
            raise InvalidArgumentError(f"unknown operator {op!r}")
    M = graphical_matroid(edges)
    # a series step on a bridge leaves a cut vertex, so the cycle
    # matroid can fall out of the class; reject such programs
    if not is_series_parallel(M):
        raise InvalidArgumentError("program output is not series-parallel (graph has a bridge)")
    return M


# -- tree shape generation ----------------------------------------------------


def _ahu_rooted(adj: dict, root, parent) -> str:
    kids = sorted(_ahu_rooted(adj, y, root) for y in adj[root] if y != parent)
    return "(" + "".join(kids) + ")"


def shape_signature(tree: ColoredTree) -> str:
    """Canonical string of the unlabeled shape (colors and labels ignored)."""
    adj = {v: list(nb) for v, nb in tree._adj.items()}
    # peel leaves to find the center
    degree = {v: len(nb) for v, nb in adj.items()}
    alive = set(adj)
    layer = [v for v in alive if degree[v] == 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for y in adj[v]:
                if y in alive:
                    degree[y] -= 1
                    if degree[y] == 1:
                        nxt.append(y)
        layer = nxt
    centers = sorted(alive)
    if len(centers) == 1:
        return _ahu_rooted(tree._adj, centers[0], None)
    a, b = centers
    return "|".join(sorted((_ahu_rooted(tree._adj, a, b), _ahu_rooted(tree._adj, b, a))))


def all_tree_shapes(n: int) -> list:
    """One uncolored trivalent tree per unlabeled shape, leaves 1..n."""
    if n < 2:
        raise InvalidArgumentError("need at least two leaves")
    shapes = [ColoredTree([("L1", "L2")])]
    for k in range(3, n + 1):
        found: dict = {}
        for t in shapes:
            for u, v in t.edges:
                w = f"v{k - 2}"
                rows = [e for e in t.edges if e != (u, v)]
                rows += [(u, w), (v, w), (w, f"L{k}")]
                child = ColoredTree(rows)
                found.setdefault(shape_signature(child), child)
        shapes = [found[s] for s in sorted(found)]
    return shapes


def caterpillar(n: int) -> ColoredTree:
    """The path-like trivalent shape on leaves 1..n."""
    if n < 2:
        raise InvalidArgumentError("need at least two leaves")
    if n < 4:
        return all_tree_shapes(n)[0]
    rows = [("L1", "v1"), ("L2", "v1"), (f"L{n - 1}", f"v{n - 2}"), (f"L{n}", f"v{n - 2}")]
    for k in range(2, n - 2):
        rows.append((f"L{k + 1}", f"v{k}"))
    for k in range(1, n - 2):
        rows.append((f"v{k}", f"v{k + 1}"))
    return ColoredTree(rows)


def all_colorings(tree: ColoredTree, d: int) -> list:
    """Every (d,n)-coloring of a trivalent shape: d-1 black vertices."""
    internal = tree.internal_vertices()
    n = tree.n
    if not 1 <= d <= n - 1:
        raise InvalidArgumentError("need 1 <= d <= n-1")
    out = []
    for blacks in combinations(internal, d - 1):
        bs = set(blacks)
        cols = {v: (BLACK if v in bs else WHITE) for v in internal}
        out.append(ColoredTree(tree.edges, cols))
    return out


# -- JSON ----------------------------------------------------------------------


def _edges_jsonable(edge_rows) -> list:
    return [{"u": u, "v": v, "len": rat_to_str(Fraction(ln))} for u, v, ln in edge_rows]


def _colored_tree_to_jsonable(t: ColoredTree) -> dict:
    return {
        "n": t.n,
        "edges": _edges_jsonable((u, v, 0) for u, v in t.edges),
        "colors": {v: c for v, c in t.colors},
    }


def _weighted_tree_to_jsonable(t: WeightedTree) -> dict:
    return {"n": t.leaf_count(), "edges": _edges_jsonable(t.edges)}


def _tree_rows_from_jsonable(obj: dict) -> list:
    if not isinstance(obj.get("edges"), list):
        raise core.ParseError("tree JSON needs an edges array")
    rows = []
    for item in obj["edges"]:
        if not isinstance(item, dict) or "u" not in item or "v" not in item:
            raise core.ParseError("each edge needs u and v")
        rows.append((item["u"], item["v"], rat_from_str(item.get("len", "0"))))
    return rows


def _check_declared_n(obj: dict, labels: tuple) -> None:
    n = obj.get("n")
    if n is not None and tuple(range(1, int(n) + 1)) != labels:
        raise core.ParseError(f"leaves must be L1..L{n}")


def _colored_tree_from_jsonable(obj: dict) -> ColoredTree:
    rows = _tree_rows_from_jsonable(obj)
    colors = obj.get("colors")
    if not isinstance(colors, dict):
        raise core.ParseError("colored tree JSON needs a colors object")
    t = ColoredTree([(u, v) for u, v, _ in rows], colors)
    _check_declared_n(obj, t.leaf_labels())
    return t


def _weighted_tree_from_jsonable(obj: dict) -> WeightedTree:
    t = WeightedTree(_tree_rows_from_jsonable(obj))
    _check_declared_n(obj, t.leaf_labels())
    return t


core.register_codec(
    ColoredTree,
    _colored_tree_to_jsonable,
    lambda o: isinstance(o, dict) and "edges" in o and "colors" in o,
    _colored_tree_from_jsonable,
)

core.register_codec(
    WeightedTree,
    _weighted_tree_to_jsonable,
    lambda o: isinstance(o, dict) and "edges" in o and "colors" not in o,
    _weighted_tree_from_jsonable,
)
