from __future__ import annotations

import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tropls.core import BivariatePoly, InvalidArgumentError
from tropls.matroid import (
    Matroid,
    direct_sum,
    from_bases,
    graphical_matroid,
    labels_to_mask,
    uniform,
)
from tropls.tutte import (
    beta,
    is_series_parallel,
    polytope_dim,
    rank_generating,
    tutte,
    tutte_decomposition_check,
)


def _random_matroid(rng: random.Random, n: int, d: int) -> Matroid:
    pool = list(combinations(range(1, n + 1), d))
    while True:
        fam = rng.sample(pool, rng.randrange(1, len(pool) + 1))
        if oracles.exchange_ok(fam):
            return from_bases(n, fam)


class TestTuttePolynomial:
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_matches_subset_sum_oracle(self, seed):
        rng = random.Random(seed)
        n = rng.randrange(2, 7)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        assert tutte(M).coeffs == oracles.tutte_coeffs(M.bases_sets(), M.elements)

    def test_uniform_rank_three_on_six(self):
        t = tutte(uniform(3, 6))
        assert t.coeffs == {(1, 0): 6, (0, 1): 6, (2, 0): 3,
                            (0, 2): 3, (3, 0): 1, (0, 3): 1}

    def test_triangle_graph(self):
        t = tutte(graphical_matroid([(0, 1), (1, 2), (0, 2)]))
        assert t.coeffs == oracles.tutte_coeffs(
            [(1, 2), (1, 3), (2, 3)], (1, 2, 3))

    def test_evaluation_counts_bases(self):
        for n, d in [(4, 2), (5, 2), (6, 3)]:
            assert tutte(uniform(d, n)).eval_at(1, 1) == comb(n, d)

    def test_rank_generating_shift_relation(self):
        M = uniform(2, 4)
        assert rank_generating(M) == tutte(M).shifted(1, 1)

    def test_rejects_non_matroid_family(self):
        fake = Matroid(labels_to_mask((1, 2, 3, 4)), 2,
                       (labels_to_mask((1, 2)), labels_to_mask((3, 4))))
        with pytest.raises(AssertionError):
            tutte(fake)


class TestBeta:
    def test_uniform_values(self):
        # beta of the uniform matroid is a single binomial
        for n in range(2, 8):
            for d in range(1, n):
                assert beta(uniform(d, n)) == comb(n - 2, d - 1)

    def test_single_element(self):
        # one-element grounds have no two-coefficient agreement to lean
        # on; the value is the nullity-side linear coefficient
        assert beta(uniform(1, 1)) == 0
        assert beta(uniform(0, 1)) == 1

    def test_disconnected_vanishes(self):
        assert beta(direct_sum(uniform(1, 2),
                               from_bases((3, 4), [(3,), (4,)]))) == 0

    def test_empty_ground_rejected(self):
        with pytest.raises(InvalidArgumentError):
            beta(uniform(0, 0))


class TestSeriesParallel:
    def test_small_positives(self):
        assert is_series_parallel(uniform(1, 1))
        assert is_series_parallel(uniform(1, 2))
        assert is_series_parallel(uniform(2, 3))
        assert is_series_parallel(graphical_matroid(
            [(0, 1), (1, 2), (0, 2), (0, 2)]))

    def test_cut_vertex_disconnects_the_matroid(self):
        # two parallel classes in series share only a cut vertex, so the
        # cycle matroid splits and the beta invariant vanishes
        assert not is_series_parallel(graphical_matroid(
            [(0, 1), (0, 1), (1, 2), (1, 2)]))

    def test_uniform_2_4_is_not(self):
        assert not is_series_parallel(uniform(2, 4))

    def test_disconnected_is_not(self):
        assert not is_series_parallel(
            direct_sum(uniform(1, 2), from_bases((3, 4), [(3,), (4,)])))

    def test_single_coloop_counts(self):
        assert is_series_parallel(uniform(1, 1))
        with pytest.raises(InvalidArgumentError):
            is_series_parallel(uniform(0, 1))  # a lone loop

    def test_loops_rejected(self):
        loopy = Matroid(labels_to_mask((1, 2)), 1, (labels_to_mask((1,)),))
        with pytest.raises(InvalidArgumentError):
            is_series_parallel(loopy)


class TestDecompositionIdentity:
    def test_whole_polytope_is_its_own_cover(self):
        M = uniform(2, 4)
        ok, residual = tutte_decomposition_check(M, [(M, polytope_dim(M))])
        assert ok and residual.is_zero()

    def test_alternating_signs_matter(self):
        M = uniform(2, 4)
        wrong = [(M, polytope_dim(M) - 1)]
        ok, residual = tutte_decomposition_check(M, wrong)
        assert not ok
        assert residual == tutte(M).scaled(2)

    def test_polytope_dim(self):
        assert polytope_dim(uniform(2, 4)) == 3
        assert polytope_dim(uniform(2, 2)) == 0
        assert polytope_dim(direct_sum(uniform(1, 2),
                                       from_bases((3, 4), [(3,), (4,)]))) == 2
