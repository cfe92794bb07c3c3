from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tropls.core import (
    BivariatePoly,
    InvalidArgumentError,
    ParseError,
    bits_to_subset,
    check_subset,
    deserialize,
    enumerate_subsets,
    rat_from_str,
    rat_to_str,
    serialize,
    subset_index,
    subset_masks,
    subset_to_bits,
)


class TestColexEnumeration:
    def test_matches_definitional_order(self):
        for n in range(0, 8):
            for d in range(0, n + 1):
                assert list(enumerate_subsets(n, d)) == oracles.colex_subsets(n, d)

    def test_documented_example(self):
        assert enumerate_subsets(4, 2) == (
            (1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))

    def test_degenerate_sizes(self):
        assert enumerate_subsets(5, 0) == ((),)
        assert enumerate_subsets(5, 5) == ((1, 2, 3, 4, 5),)

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidArgumentError):
            enumerate_subsets(3, 4)
        with pytest.raises(InvalidArgumentError):
            enumerate_subsets(-1, 0)

    def test_index_and_masks_agree(self):
        for n, d in [(5, 2), (6, 3), (7, 1)]:
            subs = enumerate_subsets(n, d)
            idx = subset_index(n, d)
            assert [idx[s] for s in subs] == list(range(len(subs)))
            assert subset_masks(n, d) == tuple(subset_to_bits(s) for s in subs)


class TestBitConversions:
    @given(st.sets(st.integers(min_value=1, max_value=24)))
    def test_roundtrip(self, labels):
        s = tuple(sorted(labels))
        assert bits_to_subset(subset_to_bits(s)) == s

    def test_label_one_is_lowest_bit(self):
        assert subset_to_bits((1,)) == 1
        assert subset_to_bits((3,)) == 4

    def test_check_subset_rejects_bad_input(self):
        with pytest.raises(InvalidArgumentError):
            check_subset((2, 1), 4)
        with pytest.raises(InvalidArgumentError):
            check_subset((0, 1), 4)
        with pytest.raises(InvalidArgumentError):
            check_subset((1, 5), 4)
        assert check_subset((1, 4), 4) == (1, 4)


class TestBivariatePoly:
    def test_zero_and_monomial(self):
        assert BivariatePoly.zero().is_zero()
        m = BivariatePoly.monomial(2, 1, 3)
        assert m.coefficient(2, 1) == 3
        assert m.coefficient(0, 0) == 0

    def test_arithmetic(self):
        a = BivariatePoly({(1, 0): 2, (0, 1): 5})
        b = BivariatePoly({(1, 0): -2, (2, 2): 1})
        assert (a + b).coeffs == {(0, 1): 5, (2, 2): 1}
        assert (a - a).is_zero()
        assert a.scaled(3).coefficient(0, 1) == 15
        prod = a * b
        assert prod.coefficient(2, 0) == -4
        assert prod.coefficient(3, 2) == 2

    def test_shift_is_substitution(self):
        p = BivariatePoly({(2, 1): 1, (0, 0): 4})
        q = p.shifted(3, -2)
        for x in (-2, 0, 1, 5):
            for y in (-1, 0, 2):
                assert q.eval_at(x, y) == p.eval_at(x + 3, y - 2)

    def test_negative_exponent_rejected(self):
        with pytest.raises(InvalidArgumentError):
            BivariatePoly({(-1, 0): 1})

    def test_zero_coefficients_dropped(self):
        assert BivariatePoly({(1, 1): 0}).is_zero()


class TestRationalText:
    def test_integers_render_bare(self):
        assert rat_to_str(Fraction(7)) == "7"
        assert rat_to_str(Fraction(-3, 1)) == "-3"

    def test_fraction_form(self):
        assert rat_to_str(Fraction(-2, 6)) == "-1/3"
        assert rat_from_str("-1/3") == Fraction(-1, 3)
        assert rat_from_str(" 4 / 6 ") == Fraction(2, 3)

    def test_rejects_junk(self):
        for bad in ("", "x", "1.5", "1/0", "--2", "1/ "):
            with pytest.raises(ParseError):
                rat_from_str(bad)

    @given(st.fractions(max_denominator=10 ** 6))
    def test_roundtrip(self, x):
        assert rat_from_str(rat_to_str(x)) == x


class TestSerializationDispatch:
    def test_rational_text_is_not_json(self):
        assert serialize(Fraction(5, 3)) == "5/3"
        assert deserialize("5/3") == Fraction(5, 3)

    def test_poly_roundtrip(self):
        p = BivariatePoly({(1, 0): 6, (0, 1): 6, (3, 0): 1})
        assert deserialize(serialize(p)) == p

    def test_unknown_payload_rejected(self):
        with pytest.raises(ParseError):
            deserialize('{"what": 1}')
        with pytest.raises(ParseError):
            deserialize("not json at all {{{")

    def test_unregistered_type_rejected(self):
        with pytest.raises(InvalidArgumentError):
            serialize(object())
