from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from tropls.core import DegenerateMinorError, InvalidArgumentError, RankExcessError, deserialize, serialize
from tropls.matroid import (
    BipartiteMultigraph,
    Matroid,
    check_matroid,
    chain_length,
    component_graph,
    connected_components,
    contract_set,
    direct_sum,
    dual,
    flats,
    from_bases,
    good_flats,
    graphical_matroid,
    is_connected,
    is_loop_free,
    is_transverse,
    labels_to_mask,
    loops_coloops,
    mask_to_labels,
    matroid_intersection,
    minor,
    parallel_connection_assembly,
    perfect_matching_census,
    rank_of,
    restrict,
    uniform,
)


def _random_matroid(rng: random.Random, n: int, d: int) -> Matroid:
    """Rejection-sample a matroid by growing a family until exchange holds."""
    pool = list(combinations(range(1, n + 1), d))
    while True:
        fam = rng.sample(pool, rng.randrange(1, len(pool) + 1))
        if oracles.exchange_ok(fam):
            return from_bases(n, fam)


class TestConstruction:
    @given(st.data())
    def test_check_matroid_matches_oracle(self, data):
        n = data.draw(st.integers(min_value=2, max_value=6))
        d = data.draw(st.integers(min_value=1, max_value=n - 1))
        pool = list(combinations(range(1, n + 1), d))
        fam = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=6))
        wit = check_matroid(n, fam)
        assert (wit is None) == oracles.exchange_ok(fam)

    def test_from_bases_rejects_exchange_failure(self):
        with pytest.raises(InvalidArgumentError):
            from_bases(4, [(1, 2), (3, 4)])

    def test_from_bases_rejects_mixed_sizes(self):
        with pytest.raises(InvalidArgumentError):
            from_bases(4, [(1, 2), (3,)])

    def test_from_bases_rejects_empty(self):
        with pytest.raises(InvalidArgumentError):
            from_bases(4, [])

    def test_ground_as_labels(self):
        M = from_bases((2, 5, 7), [(2, 5), (2, 7)])
        assert M.elements == (2, 5, 7)
        assert M.rank == 2

    def test_uniform(self):
        M = uniform(2, 4)
        assert len(M.bases) == 6
        assert M.rank == 2
        assert is_loop_free(M)
        with pytest.raises(InvalidArgumentError):
            uniform(5, 4)


class TestRankAndElements:
    @given(st.data())
    def test_rank_matches_oracle(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 7)
        d = rng.randrange(1, n)
        M = _random_matroid(rng, n, d)
        fam = M.bases_sets()
        for r in range(n + 1):
            for sub in combinations(range(1, n + 1), r):
                assert rank_of(M, sub) == oracles.rank_of(fam, sub)

    def test_rank_outside_ground_rejected(self):
        with pytest.raises(InvalidArgumentError):
            rank_of(uniform(2, 4), (5,))

    @given(st.data())
    def test_loops_coloops_match_oracle(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 7)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        fam = M.bases_sets()
        ground = M.elements
        loops, coloops = loops_coloops(M)
        assert set(loops) == oracles.loops_of(fam, ground)
        assert set(coloops) == oracles.coloops_of(fam, ground)
        assert is_loop_free(M) == (not oracles.loops_of(fam, ground))


class TestDualityAndMinors:
    @given(st.data())
    def test_dual_involution_and_rank(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 7)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        Md = dual(M)
        assert Md.rank == n - M.rank
        assert dual(Md) == M
        assert oracles.exchange_ok(Md.bases_sets())

    @given(st.data())
    def test_restrict_matches_definition(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 7)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        fam = [set(b) for b in M.bases_sets()]
        labels = list(M.elements)
        q = set(rng.sample(labels, rng.randrange(1, n + 1)))
        R = restrict(M, sorted(q))
        r = max(len(b & q) for b in fam)
        expect = {frozenset(b & q) for b in fam if len(b & q) == r}
        assert {frozenset(b) for b in R.bases_sets()} == expect

    @given(st.data())
    def test_contract_matches_definition(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 7)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        fam = [set(b) for b in M.bases_sets()]
        labels = list(M.elements)
        t = set(rng.sample(labels, rng.randrange(0, n)))
        C = contract_set(M, sorted(t))
        r = max(len(b & t) for b in fam)
        expect = {frozenset(b - t) for b in fam if len(b & t) == r}
        assert {frozenset(b) for b in C.bases_sets()} == expect
        assert C.ground == M.ground & ~labels_to_mask(t)

    def test_minor_contract_must_be_independent(self):
        M = from_bases(4, [(1, 2), (1, 3), (1, 4)])  # 1 is a coloop
        with pytest.raises(InvalidArgumentError):
            minor(M, (), (2, 3, 4))

    def test_minor_can_run_out_of_bases(self):
        M = uniform(1, 2)
        with pytest.raises(DegenerateMinorError):
            minor(M, (1, 2), ())

    def test_minor_ground_is_punctured(self):
        M = uniform(2, 4)
        got = minor(M, (1,), (4,))
        assert got.elements == (2, 3)
        assert got.rank == 1

    def test_direct_sum_requires_disjoint(self):
        with pytest.raises(InvalidArgumentError):
            direct_sum(uniform(1, 2), uniform(1, 2))

    def test_direct_sum_components(self):
        A = uniform(1, 2)
        B = from_bases((3, 4, 5), [(3, 4), (3, 5), (4, 5)])
        S = direct_sum(A, B)
        assert S.rank == 3
        blocks = [blk for blk, _ in connected_components(S)]
        assert blocks == [(1, 2), (3, 4, 5)]


class TestConnectivity:
    @given(st.data())
    def test_components_match_separator_oracle(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 7)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        got = [frozenset(blk) for blk, _ in connected_components(M)]
        expect = oracles.components_of(M.bases_sets(), M.elements)
        assert sorted(got, key=min) == expect

    def test_component_matroids_multiply(self):
        M = from_bases(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
        parts = connected_components(M)
        assert [blk for blk, _ in parts] == [(1, 2), (3, 4)]
        lift = [set()]
        for _, part in parts:
            lift = [s | set(b) for s in lift for b in part.bases_sets()]
        assert {frozenset(s) for s in lift} == {frozenset(b) for b in M.bases_sets()}

    def test_uniform_is_connected(self):
        assert is_connected(uniform(2, 4))
        assert not is_connected(uniform(2, 2))


class TestTransversality:
    def test_simple_forest_pair(self):
        M = from_bases(2, [(1, 2)])
        M2 = uniform(1, 2)
        ok, cert = is_transverse(M, M2)
        assert ok and cert is None

    def test_multi_edge_detected(self):
        M = uniform(2, 3)
        ok, cert = is_transverse(M, M)
        assert not ok
        assert cert[0] == "multi-edge"

    def test_cycle_detected(self):
        # two split pairings of [4] cross each other twice
        M = direct_sum(uniform(1, 2), from_bases((3, 4), [(3,), (4,)]))
        M2 = direct_sum(from_bases((1, 3), [(1,), (3,)]),
                        from_bases((2, 4), [(2,), (4,)]))
        ok, cert = is_transverse(M, M2)
        assert not ok
        assert cert[0] in ("cycle", "multi-edge")

    def test_loop_free_required(self):
        loopy = Matroid(labels_to_mask((1, 2)), 1, (labels_to_mask((1,)),))
        with pytest.raises(InvalidArgumentError):
            component_graph(loopy, uniform(1, 2))

    def test_intersection_matches_covering_pairs(self):
        M = from_bases(2, [(1, 2)])
        M2 = uniform(1, 2)
        got = matroid_intersection(M, M2)
        assert got == uniform(1, 2)

    @given(st.data())
    def test_intersection_definition_on_random_pairs(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 6)
        d1 = rng.randrange(1, n + 1)
        d2 = rng.randrange(max(1, n - d1), n + 1)
        M = _random_matroid(rng, n, d1)
        M2 = _random_matroid(rng, n, d2)
        assume(is_loop_free(M) and is_loop_free(M2))
        full = set(range(1, n + 1))
        expect = {frozenset(set(b1) & set(b2))
                  for b1 in M.bases_sets() for b2 in M2.bases_sets()
                  if set(b1) | set(b2) == full}
        if not expect:
            with pytest.raises(RankExcessError):
                matroid_intersection(M, M2)
            return
        got = matroid_intersection(M, M2)
        assert {frozenset(b) for b in got.bases_sets()} == expect

    def test_rank_excess_raises(self):
        M = from_bases(4, [(1, 2), (1, 3), (1, 4)])  # every basis holds 1
        with pytest.raises(RankExcessError):
            matroid_intersection(M, M)


class TestAssembly:
    def test_two_triangles_glued_on_an_edge(self):
        tri1 = graphical_matroid([(0, 1), (1, 2), (0, 2)])
        tri2 = from_bases((3, 4, 5), [(3, 4), (3, 5), (4, 5)])
        got = parallel_connection_assembly([(0, 1)], [tri1, tri2])
        glued = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 2)]
        expect = oracles.graphic_bases(4, glued)
        expect_labels = {frozenset(i + 1 for i in b) for b in expect}
        assert {frozenset(b) for b in got.bases_sets()} == expect_labels

    def test_rejects_cycles(self):
        parts = [uniform(1, 2),
                 from_bases((2, 3), [(2,), (3,)]),
                 from_bases((1, 3), [(1,), (3,)])]
        with pytest.raises(InvalidArgumentError):
            parallel_connection_assembly([(0, 1), (1, 2), (2, 0)], parts)

    def test_rejects_bad_overlap(self):
        with pytest.raises(InvalidArgumentError):
            parallel_connection_assembly(
                [(0, 1)], [uniform(2, 3), from_bases((2, 3, 4), [(2, 3), (2, 4), (3, 4)])])

    def test_rejects_sneaky_nonadjacent_overlap(self):
        parts = [uniform(1, 2),
                 from_bases((2, 3), [(2,), (3,)]),
                 from_bases((3, 1), [(3,), (1,)])]
        with pytest.raises(InvalidArgumentError):
            parallel_connection_assembly([(0, 1), (1, 2)], parts)


class TestMatchingCensus:
    def _brute(self, nl, nr, edges):
        if nl != nr:
            return 0
        count = 0
        for perm in permutations(range(nr)):
            ways = 1
            for i in range(nl):
                ways *= sum(1 for (li, ri, _) in edges if li == i and ri == perm[i])
            count += ways
        return count

    @given(st.data())
    def test_census_matches_permanent(self, data):
        nl = data.draw(st.integers(min_value=1, max_value=4))
        nr = data.draw(st.integers(min_value=1, max_value=4))
        raw = data.draw(st.lists(
            st.tuples(st.integers(min_value=0, max_value=nl - 1),
                      st.integers(min_value=0, max_value=nr - 1)),
            min_size=0, max_size=8))
        edges = tuple((li, ri, k + 1) for k, (li, ri) in enumerate(raw))
        G = BipartiteMultigraph(tuple(range(nl)), tuple(range(nr)), edges)
        full, simple = perfect_matching_census(G)
        assert full == self._brute(nl, nr, edges)
        assert simple == self._brute(nl, nr, G.collapse_simple().edges)


class TestFlats:
    @given(st.data())
    def test_flats_are_exactly_the_closed_sets(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        n = rng.randrange(2, 6)
        M = _random_matroid(rng, n, rng.randrange(1, n))
        fam = M.bases_sets()
        labels = M.elements
        got = set(flats(M))
        for r in range(n + 1):
            for sub in combinations(labels, r):
                rk = oracles.rank_of(fam, sub)
                closed = all(oracles.rank_of(fam, set(sub) | {e}) > rk
                             for e in labels if e not in sub)
                assert (sub in got) == closed

    def test_good_flats_definition(self):
        M = uniform(2, 4)
        good = good_flats(M)
        for q in good:
            assert 0 < len(q) < 4
            assert is_connected(restrict(M, q))
            assert is_connected(contract_set(M, q))
        # rank-1 flats of U(2,4) are single elements; restriction is free
        assert all(len(q) != 2 or q not in good for q in combinations(range(1, 5), 2))

    def test_good_flats_need_connected_input(self):
        with pytest.raises(InvalidArgumentError):
            good_flats(direct_sum(uniform(1, 2), from_bases((3,), [(3,)])))

    def test_chain_length_counts(self):
        M = uniform(2, 4)
        total = sum(chain_length(M, 1, 2) for _ in (0,))
        assert total == sum(1 for q in good_flats(M) if 1 in q and 2 not in q)


class TestGraphical:
    @given(st.data())
    def test_matches_spanning_forest_oracle(self, data):
        rng = random.Random(data.draw(st.integers(min_value=0, max_value=10 ** 6)))
        nv = rng.randrange(2, 5)
        ne = rng.randrange(1, 7)
        edges = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(ne)]
        edges = [(u, v) for u, v in edges if u != v]
        assume(edges)
        verts = {v for e in edges for v in e}
        assume(len(verts) >= 2)
        # connectivity check through the oracle's own forest search
        expect = oracles.graphic_bases(max(verts) + 1, edges)
        size = len({v for e in edges for v in e}) - 1
        assume(all(len(b) == size for b in expect))
        got = graphical_matroid(edges)
        expect_labels = {frozenset(i + 1 for i in b) for b in expect}
        assert {frozenset(b) for b in got.bases_sets()} == expect_labels

    def test_disconnected_rejected(self):
        with pytest.raises(InvalidArgumentError):
            graphical_matroid([(0, 1), (2, 3)])

    def test_triangle_is_uniform(self):
        assert graphical_matroid([(0, 1), (1, 2), (0, 2)]) == uniform(2, 3)


class TestMatroidJson:
    def test_standard_ground_roundtrip(self):
        M = uniform(2, 4)
        assert deserialize(serialize(M)) == M

    def test_punctured_ground_roundtrip(self):
        M = from_bases((2, 5, 7), [(2, 5), (2, 7)])
        text = serialize(M)
        assert '"ground": [2, 5, 7]' in text
        assert deserialize(text) == M
