"""Benchmark the compiled kernels against the pure-Python reference.

Runs each kernel on representative inputs through both backends,
checks that the outputs agree, and reports wall-clock medians.

    python3 benchmarks/bench_kernels.py [--reps N]
"""

import argparse
import random
import statistics
import sys
import time
from math import comb

from tropls import _pykernels as py_backend
from tropls.plucker import pair_sum_lift, scaled_integer_values, tree_plucker
from tropls.sptree import WeightedTree

try:
    from tropls import _ckernels as c_backend
except ImportError:
    c_backend = None


def _colex_masks(n, d):
    return [m for m in range(1 << n) if m.bit_count() == d]


def _tree_scaled(n, d, rng):
    edges = [("L1", "L2")]
    for k in range(3, n + 1):
        u, v = edges[rng.randrange(len(edges))]
        w = f"v{k - 2}"
        edges.remove((u, v))
        edges += [tuple(sorted((u, w))), tuple(sorted((v, w))), tuple(sorted((w, f"L{k}")))]
    rows = [(u, v, rng.randint(1, 9)) for u, v in edges]
    p = pair_sum_lift(tree_plucker(WeightedTree(rows)), d)
    return scaled_integer_values(p)[0]


def _random_scaled(n, d, rng):
    return [rng.randint(-10 ** 6, 10 ** 6) for _ in range(comb(n, d))]


def _median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _cases():
    rng = random.Random(71)
    cases = []

    # validate_relations on tree lifts and random noise
    for d, n in ((2, 5), (3, 6), (3, 7)):
        tree = _tree_scaled(n, d, rng)
        noise = _random_scaled(n, d, rng)
        cases.append((f"validate_relations tree ({d},{n})",
                      lambda b, a=(n, d, tree): b.validate_relations(*a)))
        cases.append((f"validate_relations noise ({d},{n})",
                      lambda b, a=(n, d, noise): b.validate_relations(*a)))

    for d, n in ((2, 5), (3, 6)):
        tree = _tree_scaled(n, d, rng)
        noise = _random_scaled(n, d, rng)
        cases.append((f"lower_hull_facets tree ({d},{n})",
                      lambda b, a=(n, d, tree): b.lower_hull_facets(*a)))
        cases.append((f"lower_hull_facets noise ({d},{n})",
                      lambda b, a=(n, d, noise): b.lower_hull_facets(*a)))

    for d, n in ((2, 4), (2, 5), (3, 6)):
        cases.append((f"matroid_catalog ({d},{n})",
                      lambda b, a=(n, d): b.matroid_catalog(*a)))

    # exchange scans over whole-catalog families and near-miss families
    masks65 = _colex_masks(6, 3)
    full = masks65
    broken = masks65[:-1]
    cases.append(("exchange_witness full (3,6)",
                  lambda b: b.exchange_witness(full, 6)))
    cases.append(("exchange_witness broken (3,6)",
                  lambda b: b.exchange_witness(broken, 6)))
    return cases


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=5, help="repetitions per case")
    args = ap.parse_args(argv)

    if c_backend is None:
        print("compiled backend not built; nothing to compare")
        return 1

    width = max(len(name) for name, _ in _cases())
    print(f"{'case'.ljust(width)}  {'python':>12}  {'compiled':>12}  {'speedup':>8}")
    mismatches = 0
    for name, call in _cases():
        got_py = call(py_backend)
        got_c = call(c_backend)
        if isinstance(got_py, list):
            agree = sorted(got_py) == sorted(got_c)
        else:
            agree = got_py == got_c
        if not agree:
            mismatches += 1
            print(f"{name.ljust(width)}  OUTPUT MISMATCH")
            continue
        t_py = _median_time(lambda: call(py_backend), args.reps)
        t_c = _median_time(lambda: call(c_backend), args.reps)
        ratio = t_py / t_c if t_c > 0 else float("inf")
        print(f"{name.ljust(width)}  {t_py * 1e3:>10.3f}ms  {t_c * 1e3:>10.3f}ms  {ratio:>7.1f}x")
    if mismatches:
        print(f"{mismatches} case(s) disagreed between backends")
        return 1
    print("all cases agree between backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
