"""Command-line surface: every pipeline behind one `tropls` entry
point with JSON in/out, stable output bytes, and seeded randomness.

Exit codes: 0 success; 1 usage, parse, or domain error (error JSON on
stderr); 2 negative verdict (invalid vector for `validate`, violated
bound for `conjecture-scan`).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import core, matroid, plucker, sptree, subdivision, tutte
from .core import (
    BivariatePoly,
    InvalidArgumentError,
    TroplsError,
    rat_from_str,
    rat_to_str,
)

VERDICT_EXIT = 2


def _read_value(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return core.deserialize(fh.read())


def _expect(value, cls, what: str):
    if not isinstance(value, cls):
        raise InvalidArgumentError(f"{what} file holds a {type(value).__name__}")
    return value


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _emit_value(value) -> None:
    _emit(core.to_jsonable(value))


def _labels_arg(text: str) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidArgumentError(f"expected comma-separated integers, got {text!r}")


def _rationals_arg(text: str) -> list:
    return [rat_from_str(x) for x in text.split(",")] if text else []


def poly_str(p: BivariatePoly) -> str:
    """Render with z before w, ordered by total degree: 6z+6w+3z^2+..."""
    items = sorted(p.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))
    parts = []
    for (a, b), c in items:
        if c == 0:
            continue
        var = ("z" if a == 1 else f"z^{a}" if a else "") + ("w" if b == 1 else f"w^{b}" if b else "")
        if not var:
            parts.append(str(c))
        elif c == 1:
            parts.append(var)
        elif c == -1:
            parts.append("-" + var)
        else:
            parts.append(f"{c}{var}")
    return "+".join(parts).replace("+-", "-") if parts else "0"


def _json_ints(values) -> str:
    return json.dumps(list(values), separators=(",", ":"))


# -- subcommand bodies ---------------------------------------------------------


def cmd_validate(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    wit = plucker.validate(p)
    if wit is None:
        _emit({"valid": True})
        return 0
    _emit({
        "valid": False,
        "witness": {
            "support": list(wit.support),
            "quad": list(wit.quad),
            "sums": [rat_to_str(s) for s in wit.sums],
        },
    })
    return VERDICT_EXIT


def cmd_subdivide(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    _emit(subdivision.subdivision_of(p).to_jsonable())
    return 0


def cmd_fvector(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    f = subdivision.bounded_f_vector(p)
    bound = [sptree.fvector_formula(i, p.d, p.n) for i in range(1, min(p.d, p.n - p.d) + 1)]
    tight = list(f) == bound
    sys.stdout.write(
        f"f={_json_ints(f)} bound={_json_ints(bound)} tight={str(tight).lower()}\n")
    if args.total:
        g = subdivision.loop_free_face_count(p)
        gbound = [sptree.total_face_formula(i, p.d, p.n) for i in range(1, p.d + 1)]
        gt = list(g) == gbound
        sys.stdout.write(
            f"g={_json_ints(g)} bound={_json_ints(gbound)} tight={str(gt).lower()}\n")
    return 0


def cmd_dual(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    _emit_value(plucker.dualize(p))
    return 0


def cmd_minor(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    _emit_value(plucker.minor(p, _labels_arg(args.delete), _labels_arg(args.contract)))
    return 0


def cmd_translate(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    v = _rationals_arg(args.v)
    if len(v) != p.n:
        raise InvalidArgumentError(f"translation needs {p.n} coordinates, got {len(v)}")
    _emit_value(plucker.translate(p, plucker.Point(v)))
    return 0


def cmd_stable_intersect(args) -> int:
    p = _expect(_read_value(args.p), plucker.PlueckerVector, "first vector")
    p2 = _expect(_read_value(args.q), plucker.PlueckerVector, "second vector")
    if not args.generic:
        _emit_value(plucker.stable_intersection(p, p2))
        return 0
    v, pairs = plucker.generic_translation(p, p2, args.seed)
    q = plucker.stable_intersection(p, plucker.translate(p2, v))
    _emit({
        "q": core.to_jsonable(q),
        "v": core.to_jsonable(v),
        "seed": args.seed,
        "pairs_checked": len(pairs),
    })
    return 0


def cmd_hyperplane(args) -> int:
    c = _rationals_arg(args.c)
    _emit_value(plucker.hyperplane(c))
    return 0


def cmd_corank(args) -> int:
    M = _expect(_read_value(args.matroid), matroid.Matroid, "matroid")
    _emit_value(plucker.corank_vector(M))
    return 0


def _weighted_input(value) -> sptree.WeightedTree:
    if isinstance(value, sptree.WeightedTree):
        return value
    if isinstance(value, sptree.ColoredTree):
        return sptree.weighted_from_shape(value)
    raise InvalidArgumentError("tree file holds neither a weighted nor a colored tree")


def cmd_treespace(args) -> int:
    t = _weighted_input(_read_value(args.tree))
    n = t.leaf_count()
    if not 2 <= args.d <= n - 2:
        raise InvalidArgumentError(f"need 2 <= d <= {n - 2}")
    _emit_value(plucker.pair_sum_lift(plucker.tree_plucker(t), args.d))
    return 0


def cmd_sp_matroid(args) -> int:
    t = _expect(_read_value(args.tree), sptree.ColoredTree, "colored tree")
    M = sptree.tree_matroid(t)
    _emit({"matroid": core.to_jsonable(M), "beta": tutte.beta(M)})
    return 0


def cmd_tutte(args) -> int:
    M = _expect(_read_value(args.matroid), matroid.Matroid, "matroid")
    sys.stdout.write(poly_str(tutte.tutte(M)) + "\n")
    return 0


def cmd_tutte_lemma(args) -> int:
    p = _expect(_read_value(args.vector), plucker.PlueckerVector, "vector")
    top = matroid.Matroid(p.ground_mask(), p.d,
                          tuple(sorted(matroid.labels_to_mask(s) for s in p.subsets())))
    faces = [(c.matroid, c.dim) for c in subdivision.interior_faces(p)]
    ok, residual = tutte.tutte_decomposition_check(top, faces)
    _emit({"ok": ok, "residual": core.to_jsonable(residual)})
    return 0


# -- conjecture scan -----------------------------------------------------------


def _instance_rng(seed: int, index: int) -> random.Random:
    return random.Random((seed & 0xFFFFFFFFFFFFFFFF) * 1_000_003 + index)


def _random_tree_vector(n: int, d: int, rng: random.Random) -> plucker.PlueckerVector:
    edges = [("L1", "L2")]
    for k in range(3, n + 1):
        u, v = edges[rng.randrange(len(edges))]
        w = f"v{k - 2}"
        edges.remove((u, v))
        edges += [tuple(sorted((u, w))), tuple(sorted((v, w))), tuple(sorted((w, f"L{k}")))]
    rows = []
    for u, v in edges:
        internal = u[0] == "v" and v[0] == "v"
        rows.append((u, v, rng.randint(1, 9) if internal else 0))
    t = sptree.WeightedTree(rows)
    return plucker.pair_sum_lift(plucker.tree_plucker(t), d)


def _random_corank_vector(n: int, d: int, rng: random.Random) -> plucker.PlueckerVector:
    verts = d + 1
    edges = [(0, 1)] if verts >= 2 else []
    for v in range(2, verts):
        edges.append((rng.randrange(v), v))
    while len(edges) < n:
        a = rng.randrange(verts)
        b = rng.randrange(verts)
        if a != b:
            edges.append((min(a, b), max(a, b)))
    rng.shuffle(edges)
    return plucker.corank_vector(matroid.graphical_matroid(edges))


def _random_constructible_vector(n: int, d: int, rng: random.Random, seed: int) -> plucker.PlueckerVector:
    q = None
    for _ in range(n - d):
        c = [Fraction(rng.randint(0, 10 ** 6)) for _ in range(n)]
        h = plucker.hyperplane(c)
        if q is None:
            q = h
            continue
        v, _pairs = plucker.generic_translation(q, h, seed=rng.getrandbits(63))
        q = plucker.stable_intersection(q, plucker.translate(h, v))
    return q


def _scan_instance(task) -> dict:
    family, n, d, seed, index = task
    rng = _instance_rng(seed, index)
    if family == "tree":
        p = _random_tree_vector(n, d, rng)
    elif family == "corank":
        p = _random_corank_vector(n, d, rng)
    elif family == "constructible":
        p = _random_constructible_vector(n, d, rng, seed)
    else:
        raise InvalidArgumentError(f"unknown family {family!r}")
    f = list(subdivision.bounded_f_vector(p))
    bound = [sptree.fvector_formula(i, p.d, p.n) for i in range(1, min(p.d, p.n - p.d) + 1)]
    ok = all(a <= b for a, b in zip(f, bound))
    return {"index": index, "f": f, "bound": bound, "ok": ok}


def cmd_conjecture_scan(args) -> int:
    if args.count < 1:
        raise InvalidArgumentError("count must be positive")
    if not 0 <= args.d <= args.n:
        raise InvalidArgumentError("need 0 <= d <= n")
    tasks = [(args.family, args.n, args.d, args.seed, i) for i in range(args.count)]
    workers = int(os.environ.get("TROPLS_THREADS", "1"))
    sys.stdout.write(f"seed={args.seed}\n")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_instance, tasks))
    else:
        results = [_scan_instance(t) for t in tasks]
    violated = False
    for r in results:
        sys.stdout.write(
            f"i={r['index']} f={_json_ints(r['f'])} bound={_json_ints(r['bound'])}"
            f" ok={str(r['ok']).lower()}\n")
        violated = violated or not r["ok"]
    sys.stdout.write(f"violations={sum(1 for r in results if not r['ok'])}\n")
    return VERDICT_EXIT if violated else 0


# -- wiring --------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tropls",
        description="Exact tropical linear spaces: validation, subdivisions, "
                    "face counts, duals, minors, stable intersections, tree spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the four-term relations")
    s.add_argument("vector")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("subdivide", help="facets, interior faces, dual vertices")
    s.add_argument("vector")
    s.set_defaults(run=cmd_subdivide)

    s = sub.add_parser("fvector", help="bounded face counts vs the conjectured bound")
    s.add_argument("vector")
    s.add_argument("--total", action="store_true", help="also print loop-free totals")
    s.set_defaults(run=cmd_fvector)

    s = sub.add_parser("dual", help="complementary vector")
    s.add_argument("vector")
    s.set_defaults(run=cmd_dual)

    s = sub.add_parser("minor", help="delete and contract ground elements")
    s.add_argument("vector")
    s.add_argument("--delete", default="", metavar="S")
    s.add_argument("--contract", default="", metavar="T")
    s.set_defaults(run=cmd_minor)

    s = sub.add_parser("translate", help="shift by a coordinate vector")
    s.add_argument("vector")
    s.add_argument("--v", required=True, metavar="VEC")
    s.set_defaults(run=cmd_translate)

    s = sub.add_parser("stable-intersect", help="stable intersection of two vectors")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--generic", action="store_true",
                   help="first translate the second vector generically")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_stable_intersect)

    s = sub.add_parser("hyperplane", help="vector of a tropical hyperplane")
    s.add_argument("--c", required=True, metavar="VEC")
    s.set_defaults(run=cmd_hyperplane)

    s = sub.add_parser("corank", help="corank vector of a matroid")
    s.add_argument("matroid")
    s.set_defaults(run=cmd_corank)

    s = sub.add_parser("treespace", help="rank-d lift of a tree metric")
    s.add_argument("tree")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(run=cmd_treespace)

    s = sub.add_parser("sp-matroid", help="series-parallel matroid of a colored tree")
    s.add_argument("tree")
    s.set_defaults(run=cmd_sp_matroid)

    s = sub.add_parser("tutte", help="Tutte polynomial of a matroid")
    s.add_argument("matroid")
    s.set_defaults(run=cmd_tutte)

    s = sub.add_parser("tutte-lemma", help="alternating Tutte decomposition residual")
    s.add_argument("vector")
    s.set_defaults(run=cmd_tutte_lemma)

    s = sub.add_parser("conjecture-scan", help="seeded f-vector bound scan")
    s.add_argument("--family", required=True, choices=("tree", "constructible", "corank"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=10)
    s.set_defaults(run=cmd_conjecture_scan)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.run(args)
    except TroplsError as exc:
        sys.stderr.write(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(json.dumps(
            {"error": "FileNotFoundError", "message": str(exc)}, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
